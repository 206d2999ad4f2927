"""Jaynes-Cummings dynamics of one or two Rydberg atoms and one line mode.

Units: ``hbar = 1`` inside this module.  Couplings, detunings and rates are
angular frequencies in rad/s (pass ``g / hbar`` for a coupling energy ``g``
in erg), times are in seconds.

Basis order is ``atom_A (x) atom_B (x) fock``.  Each atom has the lower
Rydberg level ``r1`` at index 0 and the upper level ``r2`` at index 1, so
``sigma_minus = |r1><r2|`` lowers the atom and emits into the mode.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import DomainError, IntegrationError, TruncationError

__all__ = [
    "SystemModel",
    "QuantumState",
    "TimeSeries",
    "build_hamiltonian",
    "collapse_operators",
    "excitation_number_operator",
    "evolve_unitary",
    "evolve_lindblad",
    "first_maximum",
    "two_atom_transfer",
    "reduced_atom_state",
    "concurrence",
    "concurrence_of",
    "TRUNCATION_THRESHOLD",
    "RWA_THRESHOLD",
]

TRUNCATION_THRESHOLD = 1e-6
RWA_THRESHOLD = 0.01
LEVELS = ("r1", "r2")


def _per_atom(value, count: int, name: str) -> tuple[float, ...]:
    if np.isscalar(value):
        return (float(value),) * count
    values = tuple(float(v) for v in value)
    if len(values) != count:
        raise DomainError(f"{name} needs {count} entries, got {len(values)}")
    return values


@dataclass(frozen=True)
class SystemModel:
    """Atoms, one truncated mode, and their decay channels.

    ``fock_cutoff`` is the number of photon-number states kept (0 to
    ``fock_cutoff - 1``).  ``mode_frequency`` is optional and only used for
    the rotating-wave validity flag.
    """

    atom_count: int = 1
    couplings: tuple[float, ...] | float = 0.0
    detunings: tuple[float, ...] | float = 0.0
    fock_cutoff: int = 8
    kappa: float = 0.0
    gamma_decay: tuple[float, ...] | float = 0.0
    gamma_phi: tuple[float, ...] | float = 0.0
    mode_frequency: float | None = None

    def __post_init__(self):
        if self.atom_count not in (1, 2):
            raise DomainError(f"atom_count must be 1 or 2, got {self.atom_count!r}")
        if self.fock_cutoff < 2:
            raise DomainError(f"fock_cutoff must be >= 2, got {self.fock_cutoff!r}")
        n = self.atom_count
        object.__setattr__(self, "couplings", _per_atom(self.couplings, n, "couplings"))
        object.__setattr__(self, "detunings", _per_atom(self.detunings, n, "detunings"))
        object.__setattr__(self, "gamma_decay", _per_atom(self.gamma_decay, n, "gamma_decay"))
        object.__setattr__(self, "gamma_phi", _per_atom(self.gamma_phi, n, "gamma_phi"))
        rates = (self.kappa, *self.gamma_decay, *self.gamma_phi)
        if any(r < 0 for r in rates):
            raise DomainError("decay and dephasing rates must be non-negative")

    @property
    def dimension(self) -> int:
        return 2**self.atom_count * self.fock_cutoff

    @property
    def is_lossless(self) -> bool:
        return self.kappa == 0 and not any(self.gamma_decay) and not any(self.gamma_phi)

    @property
    def rwa_valid(self) -> bool:
        if self.mode_frequency is None:
            return True
        return all(abs(g) / self.mode_frequency <= RWA_THRESHOLD for g in self.couplings)

    def lossless(self) -> SystemModel:
        return SystemModel(
            self.atom_count, self.couplings, self.detunings, self.fock_cutoff,
            mode_frequency=self.mode_frequency,
        )

    def with_(self, **changes) -> SystemModel:
        values = {f: getattr(self, f) for f in self.__dataclass_fields__}
        values.update(changes)
        return SystemModel(**values)

    def basis_labels(self) -> list[tuple]:
        atoms = [LEVELS] * self.atom_count
        return list(itertools.product(*atoms, range(self.fock_cutoff)))

    def basis_index(self, levels: tuple[str, ...] | str, photons: int = 0) -> int:
        if isinstance(levels, str):
            levels = (levels,)
        if len(levels) != self.atom_count:
            raise DomainError(f"need {self.atom_count} atom labels, got {levels!r}")
        if not 0 <= photons < self.fock_cutoff:
            raise DomainError(f"photon number {photons} outside the truncated space")
        index = 0
        for label in levels:
            index = index * 2 + LEVELS.index(label)
        return index * self.fock_cutoff + photons


# -- operators -----------------------------------------------------------------

_SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)


def _annihilation(n_levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), 1).astype(complex)


def _embed(model: SystemModel, atom_ops: dict[int, np.ndarray], mode_op: np.ndarray | None = None):
    factors = [atom_ops.get(j, np.eye(2, dtype=complex)) for j in range(model.atom_count)]
    factors.append(np.eye(model.fock_cutoff, dtype=complex) if mode_op is None else mode_op)
    return reduce(np.kron, factors)


def _mode_annihilation(model: SystemModel) -> np.ndarray:
    return _embed(model, {}, _annihilation(model.fock_cutoff))


def build_hamiltonian(model: SystemModel) -> np.ndarray:
    """H/hbar = sum_j [D_j s+_j s-_j + g_j (s+_j a + s-_j a^dag)] in rad/s."""
    a = _mode_annihilation(model)
    H = np.zeros((model.dimension, model.dimension), dtype=complex)
    for j in range(model.atom_count):
        sm = _embed(model, {j: _SIGMA_MINUS})
        sp = sm.conj().T
        H += model.detunings[j] * (sp @ sm)
        H += model.couplings[j] * (sp @ a + sm @ a.conj().T)
    return H


def collapse_operators(model: SystemModel) -> list[np.ndarray]:
    """Zero-temperature jump operators with their rates folded in."""
    ops = []
    if model.kappa > 0:
        ops.append(math.sqrt(model.kappa) * _mode_annihilation(model))
    for j in range(model.atom_count):
        if model.gamma_decay[j] > 0:
            ops.append(math.sqrt(model.gamma_decay[j]) * _embed(model, {j: _SIGMA_MINUS}))
        if model.gamma_phi[j] > 0:
            ops.append(math.sqrt(model.gamma_phi[j] / 2.0) * _embed(model, {j: _SIGMA_Z}))
    return ops


def excitation_number_operator(model: SystemModel) -> np.ndarray:
    a = _mode_annihilation(model)
    N = a.conj().T @ a
    for j in range(model.atom_count):
        sm = _embed(model, {j: _SIGMA_MINUS})
        N = N + sm.conj().T @ sm
    return N


def _monomial_map(c: np.ndarray):
    """(p, v) with c[i, p[i]] = v[i] if every row has at most one non-zero, else None."""
    nonzero = c != 0
    if np.any(nonzero.sum(axis=1) > 1):
        return None
    p = np.argmax(nonzero, axis=1)
    v = c[np.arange(c.shape[0]), p]
    return p, v


def _liouvillian_generator(model: SystemModel):
    """Kernel inputs ``(heff, cops, cops_dag, gather_index, gather_weight)``.

    See :mod:`rydline.kernels` for the two collapse-operator forms.
    """
    H = build_hamiltonian(model)
    d = model.dimension
    heff = H.copy()
    dense = []
    grouped: dict[bytes, list] = {}
    for c in collapse_operators(model):
        heff -= 0.5j * (c.conj().T @ c)
        mono = _monomial_map(c)
        if mono is None:
            dense.append(c)
            continue
        p, v = mono
        key = p.tobytes()
        weight = np.outer(v, v.conj()).ravel()
        if key in grouped:
            grouped[key][1] = grouped[key][1] + weight
        else:
            grouped[key] = [(p[:, None] * d + p[None, :]).ravel(), weight]
    stacked = np.array(dense, dtype=complex).reshape(len(dense), d, d)
    stacked_dag = np.ascontiguousarray(stacked.conj().transpose(0, 2, 1))
    index = np.array([g[0] for g in grouped.values()], dtype=np.int64).reshape(len(grouped), d * d)
    weight = np.array([g[1] for g in grouped.values()], dtype=complex).reshape(len(grouped), d * d)
    return np.ascontiguousarray(heff), np.ascontiguousarray(stacked), stacked_dag, index, weight


# -- states ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Density matrix over ``atom_A (x) [atom_B (x)] fock`` with its layout."""

    density_matrix: np.ndarray
    atom_count: int
    fock_cutoff: int
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        rho = np.array(self.density_matrix, dtype=complex)
        d = 2**self.atom_count * self.fock_cutoff
        if rho.shape != (d, d):
            raise DomainError(f"density matrix shape {rho.shape} does not match layout ({d}, {d})")
        rho.setflags(write=False)
        object.__setattr__(self, "density_matrix", rho)
        if self.validate:
            problems = self.physicality_defects()
            if problems:
                raise DomainError("non-physical density matrix: " + "; ".join(problems))

    @classmethod
    def basis(cls, model: SystemModel, levels, photons: int = 0) -> QuantumState:
        rho = np.zeros((model.dimension, model.dimension), dtype=complex)
        i = model.basis_index(levels, photons)
        rho[i, i] = 1.0
        return cls(rho, model.atom_count, model.fock_cutoff)

    @classmethod
    def from_ket(cls, model: SystemModel, amplitudes: dict) -> QuantumState:
        """Pure state from ``{(levels, photons): amplitude}``; normalized here."""
        psi = np.zeros(model.dimension, dtype=complex)
        for (levels, photons), amp in amplitudes.items():
            psi[model.basis_index(levels, photons)] += amp
        psi /= np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), model.atom_count, model.fock_cutoff)

    @property
    def basis_labels(self) -> list[tuple]:
        return list(itertools.product(*([LEVELS] * self.atom_count), range(self.fock_cutoff)))

    def hermiticity_defect(self) -> float:
        rho = self.density_matrix
        return float(np.max(np.abs(rho - rho.conj().T)))

    def trace_defect(self) -> float:
        return float(abs(np.trace(self.density_matrix) - 1.0))

    def min_eigenvalue(self) -> float:
        rho = self.density_matrix
        return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])

    def physicality_defects(self) -> list[str]:
        problems = []
        if self.hermiticity_defect() > 1e-10:
            problems.append(f"hermiticity defect {self.hermiticity_defect():.3g}")
        if self.trace_defect() > 1e-8:
            problems.append(f"trace defect {self.trace_defect():.3g}")
        if self.min_eigenvalue() < -1e-8:
            problems.append(f"negative eigenvalue {self.min_eigenvalue():.3g}")
        return problems

    def expect(self, op: np.ndarray) -> float:
        return float(np.real(np.trace(op @ self.density_matrix)))

    def population(self, index: int) -> float:
        return float(np.real(self.density_matrix[index, index]))

    def fock_distribution(self) -> np.ndarray:
        rho = self.density_matrix.reshape(2**self.atom_count, self.fock_cutoff,
                                          2**self.atom_count, self.fock_cutoff)
        return np.real(np.einsum("anan->n", rho))


@dataclass
class TimeSeries:
    """Sampled observables; ``states`` holds the raw density matrices."""

    times: np.ndarray
    observables: dict[str, np.ndarray]
    states: np.ndarray | None = None
    atom_count: int = 1
    fock_cutoff: int = 2
    steps: int = 0

    def state(self, i: int) -> QuantumState:
        return QuantumState(self.states[i], self.atom_count, self.fock_cutoff, validate=False)

    def __len__(self) -> int:
        return len(self.times)


def _observables(model_like, states: np.ndarray, targets: dict[str, int] | None) -> dict[str, np.ndarray]:
    atom_count, cutoff = model_like
    n_t = states.shape[0]
    diag = np.real(np.einsum("tii->ti", states)) if n_t else np.zeros((0, 2**atom_count * cutoff))
    grid = diag.reshape(n_t, *([2] * atom_count), cutoff)
    obs: dict[str, np.ndarray] = {}
    for j, name in enumerate("AB"[:atom_count]):
        axes = tuple(k for k in range(1, atom_count + 2) if k != j + 1)
        obs[f"p_r2_{name}"] = grid.sum(axis=axes)[:, 1] if n_t else np.zeros(0)
    photons = grid.sum(axis=tuple(range(1, atom_count + 1))) if n_t else np.zeros((0, cutoff))
    obs["photon_number"] = photons @ np.arange(cutoff) if n_t else np.zeros(0)
    for name, index in (targets or {}).items():
        obs[name] = diag[:, index] if n_t else np.zeros(0)
    if atom_count == 2:
        obs["concurrence"] = np.array(
            [concurrence_of(_reduce_atoms(rho, 2, cutoff)) for rho in states]
        )
    return obs


def _check_truncation(states: np.ndarray, atom_count: int, cutoff: int) -> None:
    if states.shape[0] == 0:
        return
    blocks = states.reshape(-1, 2**atom_count, cutoff, 2**atom_count, cutoff)
    top = np.real(np.einsum("taa->t", blocks[:, :, cutoff - 1, :, cutoff - 1]))
    worst = float(top.max())
    if worst > TRUNCATION_THRESHOLD:
        raise TruncationError(
            f"population {worst:.3g} in the top Fock level {cutoff - 1} exceeds "
            f"{TRUNCATION_THRESHOLD:g}; increase fock_cutoff (n_max) to at least {cutoff + 2}"
        )


def _as_times(times) -> np.ndarray:
    t = np.asarray(times, dtype=float).reshape(-1)
    if t.size > 1 and np.any(np.diff(t) < 0):
        raise DomainError("times must be non-decreasing")
    return t


def evolve_unitary(
    H: np.ndarray,
    state: QuantumState,
    times,
    targets: dict[str, int] | None = None,
    check_truncation: bool = True,
) -> TimeSeries:
    """Exact evolution rho(t) = U rho U^dag from the eigendecomposition of H."""
    H = np.asarray(H, dtype=complex)
    rho0 = state.density_matrix
    if H.shape != rho0.shape:
        raise DomainError(f"Hamiltonian shape {H.shape} does not match state {rho0.shape}")
    if np.max(np.abs(H - H.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(H))):
        raise DomainError("Hamiltonian is not Hermitian")
    t = _as_times(times)
    energies, V = np.linalg.eigh(H)
    rho_eig = V.conj().T @ rho0 @ V
    dt = t - (t[0] if t.size else 0.0)
    phases = np.exp(-1j * np.outer(dt, energies))
    states = np.einsum("ia,ta,ab,tb,jb->tij", V, phases, rho_eig, phases.conj(), V.conj(), optimize=True)
    if check_truncation:
        _check_truncation(states, state.atom_count, state.fock_cutoff)
    layout = (state.atom_count, state.fock_cutoff)
    return TimeSeries(t, _observables(layout, states, targets), states, *layout)


def evolve_lindblad(
    model: SystemModel,
    state: QuantumState,
    times,
    targets: dict[str, int] | None = None,
    rtol: float = 1e-9,
    atol: float = 1e-12,
    max_steps: int = 2_000_000,
    check_truncation: bool = True,
) -> TimeSeries:
    """Integrate the Lindblad master equation with adaptive Dormand-Prince steps.

    Samples ``state`` at ``times[0]`` and the dense-output solution at every
    later time.  Cavity decay kappa D[a], atomic decay gamma D[s-] and pure
    dephasing (gamma_phi / 2) D[s_z] are included.
    """
    if state.density_matrix.shape != (model.dimension, model.dimension):
        raise DomainError("state layout does not match the model")
    t = _as_times(times)
    generator = _liouvillian_generator(model)
    rho0 = np.array(state.density_matrix, dtype=complex, order="C")
    states, status, accepted, rejected = kernels.dopri5_evolve(
        rho0, *generator, t, float(rtol), float(atol), int(max_steps)
    )
    if status == kernels.STATUS_MAX_STEPS:
        raise IntegrationError(f"step limit {max_steps} reached before t = {t[-1]:g} s")
    if status == kernels.STATUS_STEP_UNDERFLOW:
        raise IntegrationError("step size underflow; the problem may be too stiff")
    if check_truncation:
        _check_truncation(states, model.atom_count, model.fock_cutoff)
    layout = (model.atom_count, model.fock_cutoff)
    return TimeSeries(t, _observables(layout, states, targets), states, *layout, steps=accepted)


def _generator_derivative(model: SystemModel, rho: np.ndarray, index: int) -> float:
    """d/dt of the population rho[index, index] under the master equation."""
    drho = kernels.lindblad_rhs_py(rho, *_liouvillian_generator(model))
    return float(np.real(drho[index, index]))


def first_maximum(
    model: SystemModel,
    state: QuantumState,
    target: int,
    t_guess: float,
    samples: int = 400,
    rtol: float = 1e-10,
    atol: float = 1e-13,
) -> tuple[float, float]:
    """Time and value of the first maximum of the population of basis ``target``.

    The population is sampled on ``[0, 2 t_guess]``; the first sign change of
    its exact time derivative (from the generator) is refined with Brent's
    method, propagating from the bracketing sample.
    """
    times = np.linspace(0.0, 2.0 * t_guess, samples + 1)
    lossless = model.is_lossless
    H = build_hamiltonian(model)
    if lossless:
        series = evolve_unitary(H, state, times, check_truncation=False)
    else:
        series = evolve_lindblad(model, state, times, rtol=rtol, atol=atol, check_truncation=False)
    slope = np.array([_generator_derivative(model, rho, target) for rho in series.states])
    for i in range(samples):
        if slope[i] > 0 and slope[i + 1] <= 0:
            break
    else:
        raise DomainError("no maximum of the target population within 2 t_guess")
    t_left = times[i]
    rho_left = QuantumState(series.states[i], model.atom_count, model.fock_cutoff, validate=False)

    def propagate(t: float) -> np.ndarray:
        if t == t_left:
            return rho_left.density_matrix
        if lossless:
            return evolve_unitary(H, rho_left, [t_left, t], check_truncation=False).states[-1]
        return evolve_lindblad(model, rho_left, [t_left, t], rtol=rtol, atol=atol,
                               check_truncation=False).states[-1]

    if slope[i + 1] == 0:
        t_star = times[i + 1]
    else:
        t_star = brentq(
            lambda t: _generator_derivative(model, propagate(t), target),
            t_left, times[i + 1], xtol=1e-16 * t_guess, rtol=4 * np.finfo(float).eps,
        )
    rho_star = propagate(t_star)
    return float(t_star), float(np.real(rho_star[target, target]))


def two_atom_transfer(model: SystemModel) -> tuple[float, float]:
    """Resonant exchange |r2, r1, 0> -> |r1, r2, 0> through the mode.

    Returns ``(t_transfer, fidelity)`` at the first maximum of the target
    population.  The lossless analytic value is t = pi / (sqrt(2) g).
    """
    if model.atom_count != 2:
        raise DomainError("two_atom_transfer needs atom_count = 2")
    g_A, g_B = model.couplings
    if g_A <= 0 or not math.isclose(g_A, g_B, rel_tol=1e-12):
        raise DomainError("two_atom_transfer needs equal positive couplings")
    if any(model.detunings):
        raise DomainError("two_atom_transfer needs resonant atoms")
    start = QuantumState.basis(model, ("r2", "r1"), 0)
    target = model.basis_index(("r1", "r2"), 0)
    return first_maximum(model, start, target, math.pi / (math.sqrt(2.0) * g_A))


# -- entanglement -----------------------------------------------------------------


def _reduce_atoms(rho: np.ndarray, atom_count: int, cutoff: int) -> np.ndarray:
    a = 2**atom_count
    return np.einsum("ifjf->ij", rho.reshape(a, cutoff, a, cutoff))


def reduced_atom_state(state: QuantumState) -> np.ndarray:
    """Atomic density matrix with the mode traced out."""
    return _reduce_atoms(state.density_matrix, state.atom_count, state.fock_cutoff)


_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def concurrence_of(rho_atoms: np.ndarray) -> float:
    """Wootters concurrence of a 4x4 two-qubit density matrix."""
    rho = np.asarray(rho_atoms, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError("concurrence needs a 4x4 two-atom density matrix")
    rho_tilde = _SIGMA_YY @ rho.conj() @ _SIGMA_YY
    eig = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sort(np.sqrt(np.clip(np.real(eig), 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence(state: QuantumState) -> float:
    """Concurrence of the two atoms after tracing out the mode."""
    if state.atom_count != 2:
        raise DomainError("concurrence needs atom_count = 2")
    problems = state.physicality_defects()
    if problems:
        raise DomainError("non-physical density matrix: " + "; ".join(problems))
    return concurrence_of(reduced_atom_state(state))
