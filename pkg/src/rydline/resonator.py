"""Quantized transmission-line modes and the atom-mode coupling constant.

The coupling ``g`` is available in three equivalent forms: the geometric
closed form, the form in terms of the fine-structure constant, and the
cavity-QED mode-volume form.  They agree identically when the wire length
and the mode frequency satisfy ``L = n pi v / omega``.

Energies are in erg, angular frequencies and rates in rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .electrostatics import Geometry
from .errors import DomainError
from .units import CONSTANTS, convert

__all__ = [
    "ModeSpec",
    "QBudget",
    "mode_frequency",
    "effective_mass",
    "zero_point_charge",
    "build_mode",
    "mode_coupling",
    "coupling_g",
    "coupling_g_dimensionless",
    "coupling_g_mode_volume",
    "mode_volume",
    "resonant_length",
    "cavity_decay",
    "q_budget",
    "thermal_voltage",
    "ENDCAP_Q",
    "CONTACT_Q_REFERENCE",
]

# Gold end caps: fixed floor.
ENDCAP_Q = 1e8
# Contact resistance calibration (Gaussian s/cm): 0.1 ohm gives Q = 1e7, Q ~ 1/R.
CONTACT_Q_REFERENCE = (convert(0.1, "ohm"), 1e7)


@dataclass(frozen=True)
class ModeSpec:
    """One quantized mode of the line.

    ``effective_mass`` has units erg s^2/esu^2 so that
    ``0.5 * m * omega^2 * q^2`` is an energy for a disc charge ``q``.
    """

    index: int
    frequency: float
    effective_mass: float
    zero_point_charge: float
    decay_rate: float = 0.0
    phase_velocity: float = CONSTANTS.speed_of_light

    def __post_init__(self):
        if self.index < 1:
            raise DomainError(f"mode index must be >= 1, got {self.index!r}")
        if self.decay_rate < 0:
            raise DomainError("decay rate must be non-negative")

    @property
    def quality_factor(self) -> float:
        return math.inf if self.decay_rate == 0 else self.frequency / self.decay_rate


@dataclass(frozen=True)
class QBudget:
    q_radiative: float
    q_contact: float
    q_endcap: float
    q_dielectric_cap: float = math.inf
    q_total: float = field(init=False)
    external: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        inv = sum(1.0 / q for q in self.contributions().values() if math.isfinite(q))
        object.__setattr__(self, "q_total", math.inf if inv == 0 else 1.0 / inv)

    def contributions(self) -> dict[str, float]:
        out = {
            "radiative": self.q_radiative,
            "contact": self.q_contact,
            "endcap": self.q_endcap,
            "dielectric_cap": self.q_dielectric_cap,
        }
        for label, q in self.external:
            out[f"external:{label}"] = q
        return out


def mode_frequency(n: int, v: float, L: float) -> float:
    """omega_n = n pi v / L."""
    if n < 1:
        raise DomainError(f"mode index must be >= 1, got {n!r}")
    if v <= 0 or L <= 0:
        raise DomainError("v and L must be positive")
    return n * math.pi * v / L


def resonant_length(n: int, v: float, omega: float) -> float:
    """Wire length whose n-th mode sits at ``omega``."""
    if n < 1 or v <= 0 or omega <= 0:
        raise DomainError("need n >= 1 and positive v, omega")
    return n * math.pi * v / omega


def effective_mass(n: int, geom: Geometry, v: float = CONSTANTS.speed_of_light) -> float:
    """m_n = C_w / (2 C_d^2 omega_n^2), valid for L >> R."""
    omega = mode_frequency(n, v, geom.wire_length)
    C_d = geom.disc_capacitance
    return geom.wire_capacitance / (2.0 * C_d**2 * omega**2)


def zero_point_charge(mass: float, omega: float) -> float:
    """sqrt(hbar / (2 m omega))."""
    return math.sqrt(CONSTANTS.hbar / (2.0 * mass * omega))


def build_mode(
    n: int,
    geom: Geometry,
    v: float = CONSTANTS.speed_of_light,
    Q: float = math.inf,
) -> ModeSpec:
    omega = mode_frequency(n, v, geom.wire_length)
    mass = effective_mass(n, geom, v)
    return ModeSpec(
        index=n,
        frequency=omega,
        effective_mass=mass,
        zero_point_charge=zero_point_charge(mass, omega),
        decay_rate=cavity_decay(omega, Q),
        phase_velocity=v,
    )


def mode_coupling(d_z: float, mode: ModeSpec, geom: Geometry) -> float:
    """g = d_z q_zp / (R^2 + h^2): the disc-field coupling of one photon."""
    return d_z * mode.zero_point_charge / (geom.disc_radius**2 + geom.atom_height**2)


def coupling_g(d_z: float, omega: float, h: float, L: float) -> float:
    """g = d_z sqrt(2 hbar omega / (pi^2 h^2 L)) at the optimum R = h."""
    if omega < 0 or h <= 0 or L <= 0:
        raise DomainError("omega must be non-negative, h and L positive")
    return d_z * math.sqrt(2.0 * CONSTANTS.hbar * omega / (math.pi**2 * h * h * L))


def coupling_g_dimensionless(
    N: int, n: int, v: float, h: float, omega: float
) -> float:
    """g = hbar omega sqrt(2 alpha / ((3 pi)^3 n)) sqrt(v0 / v) N^2 a0 / h.

    The fine-structure constant is the derived e^2/(hbar c), so this form
    and :func:`coupling_g` agree to rounding when L is the resonant length.
    """
    if N < 2 or n < 1:
        raise DomainError("need N >= 2 and n >= 1")
    c = CONSTANTS
    return (
        c.hbar
        * omega
        * math.sqrt(2.0 * c.fine_structure / ((3.0 * math.pi) ** 3 * n))
        * math.sqrt(c.speed_of_light / v)
        * N**2
        * c.bohr_radius
        / h
    )


def mode_volume(h: float, L: float) -> float:
    """Effective mode volume pi^3 h^2 L."""
    if h <= 0 or L <= 0:
        raise DomainError("h and L must be positive")
    return math.pi**3 * h * h * L


def coupling_g_mode_volume(d_z: float, omega: float, V: float) -> float:
    """Cavity-QED form g = d sqrt(2 pi hbar omega / V)."""
    return d_z * math.sqrt(2.0 * math.pi * CONSTANTS.hbar * omega / V)


def cavity_decay(omega: float, Q: float) -> float:
    """kappa = omega / Q; zero for an infinite Q."""
    if not Q > 0:
        raise DomainError(f"Q must be positive, got {Q!r}")
    return 0.0 if math.isinf(Q) else omega / Q


def _contact_q(contact_resistance: float) -> float:
    r_ref, q_ref = CONTACT_Q_REFERENCE
    return math.inf if contact_resistance == 0 else q_ref * r_ref / contact_resistance


def q_budget(
    geom: Geometry,
    contact_resistance: float,
    external_caps: list[tuple[str, float]] | tuple = (),
    q_dielectric_cap: float = math.inf,
) -> QBudget:
    """Harmonic Q budget of the line.

    ``contact_resistance`` is Gaussian (s/cm); the contact term is an
    extrapolation, Q ~ 1/R, from a single calibration point.
    ``external_caps`` are extra ``(label, Q)`` limits such as measured
    dielectric loss.
    """
    if contact_resistance < 0:
        raise DomainError("contact resistance must be non-negative")
    if geom.pillar_height >= geom.wire_length:
        raise DomainError("radiative pillar model needs pillar_height < wire_length")
    for label, q in external_caps:
        if not q > 0:
            raise DomainError(f"external Q cap {label!r} must be positive")
    return QBudget(
        q_radiative=(geom.wire_length / geom.pillar_height) ** 4,
        q_contact=_contact_q(contact_resistance),
        q_endcap=ENDCAP_Q,
        q_dielectric_cap=q_dielectric_cap,
        external=tuple((str(label), float(q)) for label, q in external_caps),
    )


def thermal_voltage(T: float, C_w: float) -> float:
    """RMS wire voltage sqrt(k_B T / C_w) in statvolt."""
    if T < 0 or C_w <= 0:
        raise DomainError("need T >= 0 and C_w > 0")
    return math.sqrt(CONSTANTS.boltzmann * T / C_w)
