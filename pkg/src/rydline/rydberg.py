"""Hydrogenic Rydberg-atom estimates near the chip surface.

Quantum defects and fine/hyperfine structure are ignored throughout; these
are order-of-magnitude design numbers.  Energies are in erg, rates in rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .electrostatics import field_on_axis
from .errors import DomainError
from .resonator import ModeSpec, thermal_voltage
from .units import CONSTANTS, Quantity, to_lab_units

__all__ = [
    "AtomSpec",
    "SurfaceEnvironment",
    "BudgetItem",
    "BudgetReport",
    "MotionalExcitation",
    "dipole_matrix_element",
    "transition_frequency",
    "mean_r_squared",
    "vdw_shift",
    "max_force",
    "motional_excitation",
    "linear_stark_shift",
    "decoherence_budget",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AtomSpec:
    """A Rydberg atom: principal quantum number, mass (g), trap frequency (rad/s)."""

    principal_n: int = 50
    species_mass: float = CONSTANTS.rubidium_mass
    trap_frequency: float = _TWO_PI * 50e3

    def __post_init__(self):
        if int(self.principal_n) != self.principal_n or self.principal_n < 2:
            raise DomainError(f"principal_n must be an integer >= 2, got {self.principal_n!r}")
        if not self.species_mass > 0:
            raise DomainError("species_mass must be positive")
        if self.trap_frequency < 0:
            raise DomainError("trap_frequency must be non-negative")


@dataclass(frozen=True)
class SurfaceEnvironment:
    """Surface-related inputs.

    ``patch_shift`` (rad/s) is a measured number supplied by the user; it is
    passed through to the budget unchanged.  The stray-charge geometry
    describes one extra electron on an island of the given radius at the
    given distance below the atom.
    """

    atom_height: float = 10e-4
    patch_shift: float = _TWO_PI * 7e6
    stray_island_radius: float = 10e-4
    stray_island_distance: float = 10e-4

    def __post_init__(self):
        if not self.atom_height > 0:
            raise DomainError("atom_height must be positive")


class MotionalExcitation(NamedTuple):
    total: float
    force_term: float
    trap_term: float


def dipole_matrix_element(N: int) -> float:
    """d_z = e N^2 a0 / (3 sqrt 3) for Np -> (N-1)s, in esu cm."""
    if N < 2:
        raise DomainError(f"need N >= 2 for a lower s state, got {N!r}")
    c = CONSTANTS
    return c.electron_charge * N**2 * c.bohr_radius / (3.0 * math.sqrt(3.0))


def transition_frequency(N: int) -> float:
    """Hydrogenic N -> N-1 angular frequency Ry (1/(N-1)^2 - 1/N^2) / hbar."""
    if N < 2:
        raise DomainError(f"need N >= 2, got {N!r}")
    c = CONSTANTS
    return c.rydberg_energy / c.hbar * (1.0 / (N - 1) ** 2 - 1.0 / N**2)


def mean_r_squared(N: int, ell: int) -> float:
    """Hydrogenic <r^2> = (N^2 a0^2 / 2)(5 N^2 + 1 - 3 l(l+1)) in cm^2."""
    if not 0 <= ell < N:
        raise DomainError(f"need 0 <= ell < N, got ell={ell!r}, N={N!r}")
    a0 = CONSTANTS.bohr_radius
    return 0.5 * N**2 * a0**2 * (5 * N**2 + 1 - 3 * ell * (ell + 1))


def vdw_shift(N: int, ell: int, h: float) -> float:
    """Image-dipole shift -<2 d_z^2 + d_rho^2> / (16 h^3) of an atom at height h.

    The state-resolved expectation value is replaced by the isotropic
    estimate <2 z^2 + rho^2> = (4/3) <r^2>.
    """
    if not h > 0:
        raise DomainError("h must be positive")
    e = CONSTANTS.electron_charge
    return -(4.0 / 3.0) * e**2 * mean_r_squared(N, ell) / (16.0 * h**3)


def max_force(delta_E: float, g: float, h: float) -> float:
    """Conservative force magnitude (3|dE| + |g|) / h in dyn."""
    if not h > 0:
        raise DomainError("h must be positive")
    return (3.0 * abs(delta_E) + abs(g)) / h


def motional_excitation(F: float, t: float, atom: AtomSpec) -> MotionalExcitation:
    """Probability of leaving the trap ground state during an untrapped time t.

    P = F^2 t^2 / (2 hbar M nu) + nu^2 t^2 / 8.
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    nu = atom.trap_frequency
    if nu == 0:
        raise DomainError("trap frequency must be positive; P diverges at nu = 0")
    force_term = F**2 * t**2 / (2.0 * CONSTANTS.hbar * atom.species_mass * nu)
    trap_term = nu**2 * t**2 / 8.0
    return MotionalExcitation(force_term + trap_term, force_term, trap_term)


def linear_stark_shift(N: int, k: int, E: float) -> float:
    """First-order hydrogenic shift (3/2) N k e a0 E for parabolic number k."""
    if abs(k) > N - 1:
        raise DomainError(f"|k| must be <= N - 1 = {N - 1}, got {k!r}")
    c = CONSTANTS
    return 1.5 * N * k * c.electron_charge * c.bohr_radius * E


@dataclass(frozen=True)
class BudgetItem:
    """One line of a :class:`BudgetReport`.

    ``value`` is Gaussian-CGS; ``unit`` is the lab unit used for display.
    """

    value: float
    dimension: str
    unit: str | None = None
    note: str = ""

    @property
    def lab(self) -> tuple[float, str]:
        return to_lab_units(Quantity(self.value, self.dimension), self.unit)


@dataclass
class BudgetReport:
    items: dict[str, BudgetItem] = field(default_factory=dict)

    def add(self, name: str, value: float, dimension: str, unit: str | None = None, note: str = ""):
        self.items[name] = BudgetItem(float(value), dimension, unit, note)

    def __getitem__(self, name: str) -> BudgetItem:
        return self.items[name]

    def __contains__(self, name: str) -> bool:
        return name in self.items

    def lab_value(self, name: str) -> float:
        return self.items[name].lab[0]

    def to_dict(self) -> dict[str, dict]:
        out = {}
        for name, item in self.items.items():
            value, unit = item.lab
            out[name] = {"value": value, "unit": unit, "note": item.note}
        return out


def decoherence_budget(
    atom: AtomSpec,
    env: SurfaceEnvironment,
    mode: ModeSpec,
    g: float,
    T: float,
    *,
    wire_capacitance: float | None = None,
    atomic_dephasing: float = _TWO_PI * 1e3,
    interaction_time: float | None = None,
    stark_k: int | None = None,
    ell: int = 1,
) -> BudgetReport:
    """Collect every shift and rate of one operating point into a report.

    ``interaction_time`` defaults to pi hbar / g and ``stark_k`` to N - 1,
    the largest linear Stark shift of the manifold.
    """
    N = atom.principal_n
    h = env.atom_height
    hbar = CONSTANTS.hbar
    g = abs(g)
    if interaction_time is None:
        if g == 0:
            raise DomainError("default interaction time pi hbar / g needs g > 0")
        interaction_time = math.pi * hbar / g
    k = N - 1 if stark_k is None else stark_k

    dE = vdw_shift(N, ell, h)
    force = max_force(dE, g, h)
    motion = motional_excitation(force, interaction_time, atom)
    stray_field = field_on_axis(
        CONSTANTS.electron_charge, env.stray_island_radius, env.stray_island_distance
    )
    stark = linear_stark_shift(N, k, stray_field)
    kappa = mode.decay_rate
    rate_product = kappa * atomic_dephasing
    cooperativity = math.inf if rate_product == 0 else (g / hbar) ** 2 / rate_product

    report = BudgetReport()
    report.add("g", g, "energy", "h*MHz", "atom-mode coupling at the optimum R = h")
    report.add("kappa", kappa, "angular-frequency", "2pi*kHz", "cavity decay omega/Q")
    report.add(
        "atomic_dephasing", atomic_dephasing, "angular-frequency", "2pi*kHz",
        "user input; Rydberg decoherence of order kHz",
    )
    report.add("cooperativity", cooperativity, "dimensionless", note="g^2 / (hbar^2 kappa gamma)")
    report.add(
        "vdw_shift", dE, "energy", "h*MHz",
        f"image dipole, isotropic <r^2> estimate, N={N}, l={ell}",
    )
    report.add(
        "max_force", force, "force", "N",
        "magnitude (3|dE| + |g|)/h; conservative bound used for heating",
    )
    report.add("interaction_time", interaction_time, "time", "us", "default pi hbar / g")
    report.add("motional_excitation", motion.total, "dimensionless", note="force term + trap term")
    report.add("motional_excitation_force_term", motion.force_term, "dimensionless",
               note="F^2 t^2 / (2 hbar M nu)")
    report.add("motional_excitation_trap_term", motion.trap_term, "dimensionless",
               note="nu^2 t^2 / 8")
    report.add(
        "stark_shift_single_electron", stark, "energy", "h*MHz",
        f"one electron on the island, linear Stark manifold k={k}",
    )
    if wire_capacitance is not None:
        report.add(
            "thermal_voltage", thermal_voltage(T, wire_capacitance), "voltage", "uV",
            "sqrt(k_B T / C_w)",
        )
    report.add("temperature", T, "temperature", "mK")
    report.add("patch_shift", env.patch_shift, "angular-frequency", "2pi*MHz",
               "user-supplied pass-through; compensable if static")
    return report
