import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import RK45, solve_ivp

from rydline import kernels
from rydline.dynamics import SystemModel, _liouvillian_generator


def _random_problem(seed, d=6, n_ops=2):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    H = 0.5 * (X + X.conj().T)
    cops = 0.3 * (rng.normal(size=(n_ops, d, d)) + 1j * rng.normal(size=(n_ops, d, d)))
    heff = H - 0.5j * sum(c.conj().T @ c for c in cops)
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    rho0 = np.outer(psi, psi.conj())
    cops_dag = np.ascontiguousarray(cops.conj().transpose(0, 2, 1))
    # one monomial operator (shifted, weighted permutation) takes the gather path
    perm = rng.permutation(d)
    vals = 0.4 * (rng.normal(size=d) + 1j * rng.normal(size=d))
    vals[0] = 0.0
    mono = np.zeros((d, d), complex)
    mono[np.arange(d), perm] = vals
    heff = heff - 0.5j * mono.conj().T @ mono
    index = (perm[:, None] * d + perm[None, :]).reshape(1, -1).astype(np.int64)
    weight = np.outer(vals, vals.conj()).reshape(1, -1)
    all_cops = np.concatenate([cops, mono[None]])
    gen = (np.ascontiguousarray(heff), np.ascontiguousarray(cops), cops_dag, index, weight)
    return H, all_cops, gen, rho0


def _reference_rhs(rho, H, cops):
    out = -1j * (H @ rho - rho @ H)
    for c in cops:
        cd = c.conj().T
        out += c @ rho @ cd - 0.5 * (cd @ c @ rho + rho @ cd @ c)
    return out


def test_tableau_matches_scipy():
    np.testing.assert_allclose(kernels.DP5_A[:6, :5], RK45.A, rtol=0, atol=1e-15)
    np.testing.assert_allclose(kernels.DP5_A[6], kernels.DP5_B[:6], rtol=0, atol=0)
    np.testing.assert_allclose(kernels.DP5_B[:6], RK45.B, rtol=0, atol=1e-15)
    np.testing.assert_allclose(np.abs(kernels.DP5_E), np.abs(RK45.E), rtol=0, atol=1e-15)
    np.testing.assert_allclose(kernels.DP5_DENSE, RK45.P, rtol=0, atol=1e-15)


def test_tableau_consistency():
    assert kernels.DP5_B.sum() == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(kernels.DP5_A.sum(axis=1), [0, 0.2, 0.3, 0.8, 8 / 9, 1, 1], atol=1e-14)
    # dense output reproduces the step end point at theta = 1
    np.testing.assert_allclose(kernels.DP5_DENSE.sum(axis=1), kernels.DP5_B, atol=1e-14)


@given(st.integers(0, 10_000))
@settings(max_examples=25)
def test_rhs_matches_reference(seed):
    H, all_cops, gen, rho0 = _random_problem(seed)
    expected = _reference_rhs(rho0, H, all_cops)
    np.testing.assert_allclose(kernels.lindblad_rhs_py(rho0, *gen), expected, atol=1e-12)
    np.testing.assert_allclose(kernels.lindblad_rhs(rho0, *gen), expected, atol=1e-12)


def test_compiled_and_pure_paths_agree():
    _, _, gen, rho0 = _random_problem(7)
    times = np.linspace(0.0, 3.0, 31)
    fast = kernels.dopri5_evolve(rho0, *gen, times, 1e-9, 1e-12, 100_000)
    slow = kernels.dopri5_evolve_py(rho0, *gen, times, 1e-9, 1e-12, 100_000)
    assert fast[1] == slow[1] == kernels.STATUS_OK
    assert fast[2] == slow[2]
    np.testing.assert_allclose(fast[0], slow[0], atol=1e-13)


def test_against_scipy_solve_ivp():
    H, all_cops, gen, rho0 = _random_problem(3)
    d = rho0.shape[0]
    times = np.linspace(0.0, 2.0, 21)

    def f(_t, y):
        return _reference_rhs(y.reshape(d, d), H, all_cops).ravel()

    ref = solve_ivp(f, (0, 2.0), rho0.ravel(), method="DOP853", t_eval=times, rtol=1e-12, atol=1e-14)
    ours, status, _, _ = kernels.dopri5_evolve(rho0, *gen, times, 1e-10, 1e-13, 100_000)
    assert status == kernels.STATUS_OK
    np.testing.assert_allclose(ours.reshape(len(times), -1), ref.y.T, atol=1e-8)


def test_dense_output_independent_of_sampling():
    _, _, gen, rho0 = _random_problem(11)
    coarse = np.array([0.0, 1.0, 2.0])
    fine = np.linspace(0.0, 2.0, 201)
    a = kernels.dopri5_evolve(rho0, *gen, coarse, 1e-10, 1e-13, 100_000)[0]
    b = kernels.dopri5_evolve(rho0, *gen, fine, 1e-10, 1e-13, 100_000)[0]
    np.testing.assert_allclose(a[-1], b[-1], atol=1e-9)
    np.testing.assert_allclose(a[1], b[100], atol=1e-9)


def test_step_limit_status():
    _, _, gen, rho0 = _random_problem(5)
    _, status, _, _ = kernels.dopri5_evolve(rho0, *gen, np.array([0.0, 50.0]), 1e-10, 1e-13, 5)
    assert status == kernels.STATUS_MAX_STEPS


def test_jc_generator_through_kernel():
    model = SystemModel(couplings=1.0, kappa=0.2, gamma_decay=0.1, gamma_phi=0.05, fock_cutoff=4)
    gen = _liouvillian_generator(model)
    assert gen[1].shape[0] == 0  # every jump operator of the model is monomial
    assert gen[3].shape[0] == 3  # a, sigma-, and the identity map shared by dephasing
    rho0 = np.zeros((8, 8), complex)
    rho0[4, 4] = 1.0
    out, status, _, _ = kernels.dopri5_evolve(rho0, *gen, np.linspace(0, 5, 11), 1e-9, 1e-12, 10**5)
    assert status == kernels.STATUS_OK
    np.testing.assert_allclose(np.trace(out, axis1=1, axis2=2), 1.0, atol=1e-12)


def test_env_flag_selects_pure_numpy_path():
    import os
    import subprocess
    import sys

    code = (
        "import numpy as np\n"
        "from rydline import kernels\n"
        "from rydline.dynamics import SystemModel, QuantumState, evolve_lindblad\n"
        "m = SystemModel(couplings=1.0, kappa=0.3, gamma_phi=0.1, fock_cutoff=3)\n"
        "s = evolve_lindblad(m, QuantumState.basis(m, 'r2'), np.linspace(0, 3, 4))\n"
        "print(kernels.NUMBA_ENABLED, repr(float(s.observables['photon_number'][-1])))\n"
    )
    env = dict(os.environ, RYDLINE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.split()
    assert out[0] == "False"
    from rydline.dynamics import QuantumState, evolve_lindblad

    m = SystemModel(couplings=1.0, kappa=0.3, gamma_phi=0.1, fock_cutoff=3)
    here = evolve_lindblad(m, QuantumState.basis(m, "r2"), np.linspace(0, 3, 4)).observables["photon_number"][-1]
    assert float(out[-1]) == pytest.approx(here, abs=1e-13)
