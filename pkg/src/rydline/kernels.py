"""Hot loops of the master-equation solver.

Every kernel is written once as a plain numpy function (``*_py``) and
exported under its public name either compiled with numba or as-is, see
:mod:`rydline._accel`.  Both variants are importable so they can be compared
directly.

Density matrices are square complex128 arrays.  A collapse operator enters
in one of two forms, with its rate already folded in:

* dense: stacked into ``cops`` with shape ``(k, d, d)`` (and ``cops_dag``);
* monomial (at most one non-zero per row, c[i, p(i)] = v_i): then
  (c rho c^dag)[i, j] = v_i conj(v_j) rho[p(i), p(j)], a gather plus an
  elementwise product.  ``gather_index[m]`` holds the flattened indices
  p(i) * d + p(j) and ``gather_weight[m]`` the summed v_i conj(v_j) of all
  monomial operators sharing that map.  Cavity decay, atomic decay and
  dephasing are all monomial, which turns the jump terms from O(d^3) into
  O(d^2).
"""

import types

import numpy as np

from ._accel import NUMBA_ENABLED, maybe_njit

__all__ = [
    "NUMBA_ENABLED",
    "lindblad_rhs",
    "dopri5_evolve",
    "lindblad_rhs_py",
    "dopri5_evolve_py",
    "DP5_A",
    "DP5_B",
    "DP5_E",
    "DP5_DENSE",
    "STATUS_OK",
    "STATUS_MAX_STEPS",
    "STATUS_STEP_UNDERFLOW",
]

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_STEP_UNDERFLOW = 2

# Dormand-Prince 5(4) tableau.
DP5_A = np.array(
    [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1 / 5, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3 / 40, 9 / 40, 0.0, 0.0, 0.0, 0.0],
        [44 / 45, -56 / 15, 32 / 9, 0.0, 0.0, 0.0],
        [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0.0, 0.0],
        [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0.0],
        [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
    ]
)
DP5_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# Difference between the 5th- and 4th-order weights.
DP5_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# Continuous extension: b_i(theta) = sum_j DENSE[i, j] theta^(j+1).
DP5_DENSE = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)


def lindblad_rhs(rho, heff, cops, cops_dag, gather_index, gather_weight):
    """d(rho)/dt with H_eff = H - (i/2) sum c^dag c over all collapse operators.

    Assumes ``rho`` is Hermitian so that rho H_eff^dag = (H_eff rho)^dag;
    the result is then Hermitian by construction.
    """
    rho = np.ascontiguousarray(rho)
    out = _assemble(heff @ rho, rho.ravel(), gather_index, gather_weight)
    for j in range(cops.shape[0]):
        out += cops[j] @ rho @ cops_dag[j]
    return out


def _assemble_loop(tmp, flat, gather_index, gather_weight):
    """-i tmp + i tmp^dag plus the monomial jump terms, in fused loops."""
    d = tmp.shape[0]
    out = np.empty((d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            out[i, j] = -1j * tmp[i, j] + 1j * np.conj(tmp[j, i])
    out_flat = out.ravel()
    for m in range(gather_index.shape[0]):
        for i in range(d * d):
            out_flat[i] += gather_weight[m, i] * flat[gather_index[m, i]]
    return out


def _assemble_vector(tmp, flat, gather_index, gather_weight):
    out = -1j * tmp + 1j * tmp.conj().T
    if gather_index.shape[0] > 0:
        d = tmp.shape[0]
        out += (gather_weight * flat[gather_index]).sum(axis=0).reshape((d, d))
    return out


def _combine_loop(y, k, weights, count, h):
    """y + h * sum_{j < count} weights[j] k[j], skipping zero weights."""
    out = y.copy()
    d = y.shape[0]
    for j in range(count):
        w = h * weights[j]
        if w != 0.0:
            for a in range(d):
                for b in range(d):
                    out[a, b] += w * k[j, a, b]
    return out


def _combine_vector(y, k, weights, count, h):
    return y + h * np.tensordot(weights[:count], k[:count], axes=1)


def _error_norm(err, y, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
    ratio = np.abs(err) / scale
    return np.sqrt(np.mean(ratio * ratio))


def _initial_step(y, f0, heff, cops, cops_dag, gather_index, gather_weight, rtol, atol, span):
    scale = atol + rtol * np.abs(y)
    d0 = np.sqrt(np.mean((np.abs(y) / scale) ** 2))
    d1 = np.sqrt(np.mean((np.abs(f0) / scale) ** 2))
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6 * span
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    f1 = lindblad_rhs(y + h0 * f0, heff, cops, cops_dag, gather_index, gather_weight)
    d2 = np.sqrt(np.mean((np.abs(f1 - f0) / scale) ** 2)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6 * span, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, span)


def dopri5_evolve(rho0, heff, cops, cops_dag, gather_index, gather_weight, times, rtol, atol, max_steps):
    """Integrate the master equation from ``times[0]`` and sample at ``times``.

    Returns ``(samples, status, n_accepted, n_rejected)``; ``samples`` has
    shape ``(len(times), d, d)`` and ``samples[0] == rho0``.  Sampling
    between steps uses the 4th-order continuous extension of the pair.
    """
    nt = times.shape[0]
    d = rho0.shape[0]
    samples = np.zeros((nt, d, d), dtype=np.complex128)
    if nt == 0:
        return samples, STATUS_OK, 0, 0
    y = rho0.copy()
    samples[0] = y
    t = times[0]
    t_end = times[nt - 1]
    next_out = 1
    while next_out < nt and times[next_out] <= t:
        samples[next_out] = y
        next_out += 1
    if next_out >= nt:
        return samples, STATUS_OK, 0, 0

    k = np.zeros((7, d, d), dtype=np.complex128)
    zero = np.zeros((d, d), dtype=np.complex128)
    dense_weights = np.zeros(7)
    k[0] = lindblad_rhs(y, heff, cops, cops_dag, gather_index, gather_weight)
    h = _initial_step(y, k[0], heff, cops, cops_dag, gather_index, gather_weight, rtol, atol, t_end - t)
    accepted = 0
    rejected = 0
    while next_out < nt:
        if accepted + rejected >= max_steps:
            return samples, STATUS_MAX_STEPS, accepted, rejected
        if t + h > t_end:
            h = t_end - t
        if h <= 1e-14 * max(abs(t), abs(t_end)):
            return samples, STATUS_STEP_UNDERFLOW, accepted, rejected
        for s in range(1, 7):
            ys = _combine(y, k, DP5_A[s], s, h)
            k[s] = lindblad_rhs(ys, heff, cops, cops_dag, gather_index, gather_weight)
        # the last stage is evaluated at the 5th-order solution (FSAL)
        y_new = ys
        err = _combine(zero, k, DP5_E, 7, h)
        err_norm = _error_norm(err, y, y_new, rtol, atol)
        if err_norm <= 1.0:
            t_new = t + h
            if t_new >= t_end:
                t_new = t_end
            while next_out < nt and times[next_out] <= t_new:
                if times[next_out] == t_new:
                    samples[next_out] = y_new
                else:
                    theta = (times[next_out] - t) / h
                    for j in range(7):
                        bj = 0.0
                        power = theta
                        for m in range(4):
                            bj += DP5_DENSE[j, m] * power
                            power *= theta
                        dense_weights[j] = bj
                    samples[next_out] = _combine(y, k, dense_weights, 7, h)
                next_out += 1
            t = t_new
            y = y_new
            k[0] = k[6]
            accepted += 1
            if err_norm == 0.0:
                factor = 10.0
            else:
                factor = min(10.0, 0.9 * err_norm ** -0.2)
            h *= factor
        else:
            rejected += 1
            h *= max(0.2, 0.9 * err_norm ** -0.2)
    return samples, STATUS_OK, accepted, rejected


_KERNELS = ("lindblad_rhs", "_error_norm", "_initial_step", "dopri5_evolve")

# Pure-numpy twins: same code objects, globals rebound to each other.
_py_namespace = dict(globals())
_py_namespace["_assemble"] = _assemble_vector
_py_namespace["_combine"] = _combine_vector
for _name in _KERNELS:
    _func = _py_namespace[_name]
    _py_namespace[_name] = types.FunctionType(_func.__code__, _py_namespace, _name, _func.__defaults__)
lindblad_rhs_py = _py_namespace["lindblad_rhs"]
dopri5_evolve_py = _py_namespace["dopri5_evolve"]

# Compiled variants resolve their callees through module globals at first call.
# Fused-loop helpers pay off only when compiled; numpy keeps the vector forms.
_assemble = maybe_njit(_assemble_loop) if NUMBA_ENABLED else _assemble_vector
_combine = maybe_njit(_combine_loop) if NUMBA_ENABLED else _combine_vector
for _name in _KERNELS:
    globals()[_name] = maybe_njit(globals()[_name])
