"""Static coupling chain: disc and wire capacitances, the disc field, and
the effective dipole-dipole interaction obtained by eliminating the charges.

All arguments and results are Gaussian-CGS.  The interaction energy between
two on-axis dipoles is ``J * d_A * d_B`` with ``J`` in 1/cm^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Geometry",
    "ChargeState",
    "disc_capacitance",
    "wire_capacitance",
    "field_on_axis",
    "equilibrium_charges",
    "total_energy",
    "eliminated_energy",
    "coupling_coefficient_full",
    "coupling_coefficient_simple",
    "free_space_coupling",
]

LONG_WIRE_RATIO = 10.0


@dataclass(frozen=True)
class Geometry:
    """Two discs of radius ``disc_radius`` joined by a wire of ``wire_length``.

    Atoms sit on the disc axes at ``atom_height``.  ``log_coax_ratio`` is
    ln(b/a) of the equivalent coaxial line.  Lengths in cm.
    """

    disc_radius: float
    atom_height: float
    wire_length: float
    log_coax_ratio: float = 1.0
    pillar_height: float = 30e-4

    def __post_init__(self):
        for name in ("disc_radius", "atom_height", "wire_length", "pillar_height"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not self.log_coax_ratio > 0:
            raise DomainError(f"log_coax_ratio must be positive, got {self.log_coax_ratio!r}")

    @classmethod
    def optimal(cls, atom_height: float, wire_length: float, **kwargs) -> Geometry:
        """Geometry with the disc radius equal to the atom height."""
        return cls(disc_radius=atom_height, atom_height=atom_height, wire_length=wire_length, **kwargs)

    @property
    def is_long_wire(self) -> bool:
        """False when L <= 10 R, where the closed forms lose accuracy."""
        return self.wire_length > LONG_WIRE_RATIO * self.disc_radius

    @property
    def disc_capacitance(self) -> float:
        return disc_capacitance(self.disc_radius)

    @property
    def wire_capacitance(self) -> float:
        return wire_capacitance(self.wire_length, self.log_coax_ratio)


@dataclass(frozen=True)
class ChargeState:
    q_A: float
    q_B: float

    def __post_init__(self):
        if not (math.isfinite(self.q_A) and math.isfinite(self.q_B)):
            raise DomainError("charges must be finite")


def disc_capacitance(R: float) -> float:
    """Capacitance 2R/pi of an isolated thin disc."""
    if R < 0:
        raise DomainError(f"disc radius must be non-negative, got {R!r}")
    return 2.0 * R / math.pi


def wire_capacitance(L: float, ln_ba: float = 1.0) -> float:
    """Coaxial-line capacitance L / (2 ln(b/a))."""
    if ln_ba <= 0:
        raise DomainError(f"ln(b/a) must be positive, got {ln_ba!r}")
    if L < 0:
        raise DomainError(f"wire length must be non-negative, got {L!r}")
    return L / (2.0 * ln_ba)


def field_on_axis(q: float, R: float, z: float) -> float:
    """Field q/(R^2 + z^2) at height z above the centre of a charged disc."""
    denom = R * R + z * z
    if denom == 0:
        raise DomainError("field_on_axis is singular at R = z = 0")
    return q / denom


def total_energy(q_A: float, q_B: float, d_A: float, d_B: float, geom: Geometry) -> float:
    """H_c + H_A + H_B for given disc charges and dipoles."""
    C_d = geom.disc_capacitance
    C_w = geom.wire_capacitance
    r2 = geom.disc_radius**2 + geom.atom_height**2
    H_c = (q_A**2 + q_B**2) / (2.0 * C_d) + (q_A + q_B) ** 2 / (2.0 * C_w)
    return H_c + (q_A * d_A + q_B * d_B) / r2


def equilibrium_charges(d_A: float, d_B: float, geom: Geometry) -> ChargeState:
    """Disc charges that follow the dipoles adiabatically (dH/dq_j = 0)."""
    inv_d = 1.0 / geom.disc_capacitance
    inv_w = 1.0 / geom.wire_capacitance
    r2 = geom.disc_radius**2 + geom.atom_height**2
    # Hessian of the quadratic form; the linear terms are d_j / r2.
    hessian = np.array([[inv_d + inv_w, inv_w], [inv_w, inv_d + inv_w]])
    rhs = -np.array([d_A, d_B]) / r2
    q_A, q_B = np.linalg.solve(hessian, rhs)
    return ChargeState(float(q_A), float(q_B))


def eliminated_energy(d_A: float, d_B: float, geom: Geometry) -> dict[str, float]:
    """Energy after charge elimination, split into cross and self terms.

    The elimination is done numerically through :func:`equilibrium_charges`;
    the quadratic form in (d_A, d_B) is recovered by polarization, so
    ``cross`` is the d_A*d_B term and ``self_A``/``self_B`` the terms each
    atom produces on its own.
    """
    def energy(a: float, b: float) -> float:
        q = equilibrium_charges(a, b, geom)
        return total_energy(q.q_A, q.q_B, a, b, geom)

    e_A = energy(d_A, 0.0)
    e_B = energy(0.0, d_B)
    e_AB = energy(d_A, d_B)
    return {"cross": e_AB - e_A - e_B, "self_A": e_A, "self_B": e_B, "total": e_AB}


def coupling_coefficient_full(geom: Geometry) -> float:
    """J = C_d^2 / [(C_w + 2 C_d)(R^2 + h^2)^2] for H_int = J d_A d_B."""
    C_d = geom.disc_capacitance
    C_w = geom.wire_capacitance
    r2 = geom.disc_radius**2 + geom.atom_height**2
    return C_d**2 / ((C_w + 2.0 * C_d) * r2**2)


def coupling_coefficient_simple(h: float, L: float) -> float:
    """Long-wire optimum (R = h, ln(b/a) = 1): J = 2 / (pi^2 h^2 L)."""
    if h <= 0 or L <= 0:
        raise DomainError("h and L must be positive")
    return 2.0 / (math.pi**2 * h * h * L)


def free_space_coupling(L: float) -> float:
    """Order-of-magnitude direct dipole coupling 1/L^3 at separation L."""
    if L <= 0:
        raise DomainError("L must be positive")
    return 1.0 / L**3
