"""Physical constants and the lab-unit boundary.

Everything inside rydline is Gaussian-CGS: lengths in cm, charges in esu,
capacitances in cm, fields in statV/cm, energies in erg, rates in rad/s.
Only configuration input and reported output use laboratory units
(um, mm, GHz, MHz, mK, fF, ohm, ...).  This module is the single place where
the two meet.

Angular frequency (rad/s) and ordinary frequency (Hz) are distinct
dimensions.  A decay rate of ``2pi*kHz`` and a frequency of ``kHz`` differ by
exactly 2*pi and the :class:`Quantity` type refuses to mix them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DimensionError, UnitParseError

__all__ = [
    "Constants",
    "CONSTANTS",
    "DIMENSIONS",
    "Quantity",
    "to_lab_units",
    "from_lab_units",
    "parse_quantity",
    "convert",
    "energy_to_mhz",
    "angular_to_mhz",
    "unit_table",
]


@dataclass(frozen=True)
class Constants:
    """Fundamental constants in Gaussian-CGS (CODATA 2018).

    ``speed_of_light`` doubles as the vacuum phase velocity of the line.
    """

    electron_charge: float = 1.602176634e-19 * 2.99792458e9  # esu
    bohr_radius: float = 5.29177210903e-9  # cm
    hbar: float = 1.054571817e-27  # erg s
    boltzmann: float = 1.380649e-16  # erg/K
    speed_of_light: float = 2.99792458e10  # cm/s
    atomic_mass_unit: float = 1.66053906660e-24  # g
    rubidium_mass: float = 86.909180531 * 1.66053906660e-24  # g, 87Rb

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not value > 0:
                raise ValueError(f"constant {name} must be positive, got {value!r}")

    @property
    def rydberg_energy(self) -> float:
        """Infinite-mass Rydberg energy e^2/(2 a0) in erg."""
        return self.electron_charge**2 / (2.0 * self.bohr_radius)

    @property
    def fine_structure(self) -> float:
        """e^2 / (hbar c), derived so that every closed form shares one constant set.

        It sits 4e-10 (relative) from the separately measured CODATA value,
        because the Gaussian charge here uses the exact pre-2019 vacuum
        permittivity.
        """
        return self.electron_charge**2 / (self.hbar * self.speed_of_light)

    def as_dict(self) -> dict[str, float]:
        return {
            "electron_charge": self.electron_charge,
            "bohr_radius": self.bohr_radius,
            "hbar": self.hbar,
            "boltzmann": self.boltzmann,
            "speed_of_light": self.speed_of_light,
            "atomic_mass_unit": self.atomic_mass_unit,
            "rubidium_mass": self.rubidium_mass,
        }


CONSTANTS = Constants()

_C = CONSTANTS
_TWO_PI = 2.0 * math.pi
# SI -> Gaussian bridges; c in cm/s.
_FARAD = _C.speed_of_light**2 * 1e-9  # cm per farad
_VOLT = 1e8 / _C.speed_of_light  # statvolt per volt
_OHM = 1.0 / _FARAD  # s/cm per ohm


# label -> (dimension, internal value of one unit)
_UNITS: dict[str, tuple[str, float]] = {
    # length
    "cm": ("length", 1.0),
    "m": ("length", 1e2),
    "mm": ("length", 1e-1),
    "um": ("length", 1e-4),
    "nm": ("length", 1e-7),
    # time
    "s": ("time", 1.0),
    "ms": ("time", 1e-3),
    "us": ("time", 1e-6),
    "ns": ("time", 1e-9),
    # ordinary frequency
    "Hz": ("ordinary-frequency", 1.0),
    "kHz": ("ordinary-frequency", 1e3),
    "MHz": ("ordinary-frequency", 1e6),
    "GHz": ("ordinary-frequency", 1e9),
    # angular frequency, labelled by the ordinary frequency it corresponds to
    "rad/s": ("angular-frequency", 1.0),
    "2pi*Hz": ("angular-frequency", _TWO_PI),
    "2pi*kHz": ("angular-frequency", _TWO_PI * 1e3),
    "2pi*MHz": ("angular-frequency", _TWO_PI * 1e6),
    "2pi*GHz": ("angular-frequency", _TWO_PI * 1e9),
    # energy, labelled as E/h
    "erg": ("energy", 1.0),
    "h*kHz": ("energy", _TWO_PI * _C.hbar * 1e3),
    "h*MHz": ("energy", _TWO_PI * _C.hbar * 1e6),
    "h*GHz": ("energy", _TWO_PI * _C.hbar * 1e9),
    # charge
    "esu": ("charge", 1.0),
    "e": ("charge", _C.electron_charge),
    # capacitance (Gaussian capacitance is a length)
    "statF": ("capacitance", 1.0),  # one statfarad is one Gaussian cm
    "F": ("capacitance", _FARAD),
    "pF": ("capacitance", _FARAD * 1e-12),
    "fF": ("capacitance", _FARAD * 1e-15),
    # field and potential
    "statV/cm": ("electric-field", 1.0),
    "V/cm": ("electric-field", _VOLT),
    "V/m": ("electric-field", _VOLT * 1e-2),
    "statV": ("voltage", 1.0),
    "V": ("voltage", _VOLT),
    "uV": ("voltage", _VOLT * 1e-6),
    # temperature
    "K": ("temperature", 1.0),
    "mK": ("temperature", 1e-3),
    "uK": ("temperature", 1e-6),
    # mass
    "g": ("mass", 1.0),
    "kg": ("mass", 1e3),
    "amu": ("mass", _C.atomic_mass_unit),
    # resistance
    "s/cm": ("resistance", 1.0),
    "ohm": ("resistance", _OHM),
    "mohm": ("resistance", _OHM * 1e-3),
    # force
    "dyn": ("force", 1.0),
    "N": ("force", 1e5),
    # dipole moment
    "esu*cm": ("dipole", 1.0),
    "e*a0": ("dipole", _C.electron_charge * _C.bohr_radius),
    # volume
    "cm^3": ("volume", 1.0),
    "mm^3": ("volume", 1e-3),
    # pure numbers
    "": ("dimensionless", 1.0),
}

_ALIASES = {
    "μm": "um",
    "µm": "um",
    "micron": "um",
    "μs": "us",
    "µs": "us",
    "μV": "uV",
    "µV": "uV",
    "μK": "uK",
    "Ω": "ohm",
    "Ohm": "ohm",
    "mΩ": "mohm",
    "1": "",
    "2π*Hz": "2pi*Hz",
    "2π*kHz": "2pi*kHz",
    "2π*MHz": "2pi*MHz",
    "2π*GHz": "2pi*GHz",
    "u": "amu",
}
for _prefix in ("Hz", "kHz", "MHz", "GHz"):
    for _form in ("2pi {}", "(2pi) {}", "(2π) {}", "2π {}", "2π·{}", "{}*2pi", "{} x2pi"):
        _ALIASES[_form.format(_prefix)] = "2pi*" + _prefix
for _prefix in ("kHz", "MHz", "GHz"):
    _ALIASES["h " + _prefix] = "h*" + _prefix
    _ALIASES[_prefix + "*h"] = "h*" + _prefix

_CANONICAL = {
    "length": "um",
    "time": "us",
    "ordinary-frequency": "MHz",
    "angular-frequency": "2pi*MHz",
    "energy": "h*MHz",
    "charge": "e",
    "capacitance": "fF",
    "electric-field": "V/cm",
    "voltage": "uV",
    "temperature": "mK",
    "mass": "amu",
    "resistance": "ohm",
    "force": "N",
    "dipole": "e*a0",
    "volume": "mm^3",
    "dimensionless": "",
}

DIMENSIONS = frozenset(_CANONICAL)


def _resolve(label: str) -> tuple[str, str, float]:
    key = label.strip()
    key = _ALIASES.get(key, key)
    if key not in _UNITS:
        raise UnitParseError(f"unrecognized unit label {label!r}")
    dimension, scale = _UNITS[key]
    return key, dimension, scale


@dataclass(frozen=True)
class Quantity:
    """A Gaussian-CGS value tagged with its dimension."""

    value: float
    dimension: str

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise DimensionError(f"unknown dimension {self.dimension!r}")

    def _check(self, other: Quantity) -> None:
        if not isinstance(other, Quantity):
            raise DimensionError(f"cannot combine Quantity with {type(other).__name__}")
        if other.dimension != self.dimension:
            raise DimensionError(
                f"cannot combine {self.dimension} with {other.dimension}; convert explicitly"
            )

    def __add__(self, other: Quantity) -> Quantity:
        self._check(other)
        return Quantity(self.value + other.value, self.dimension)

    def __sub__(self, other: Quantity) -> Quantity:
        self._check(other)
        return Quantity(self.value - other.value, self.dimension)

    def __mul__(self, factor: float) -> Quantity:
        if isinstance(factor, Quantity):
            raise DimensionError("products of quantities are not supported")
        return Quantity(self.value * factor, self.dimension)

    __rmul__ = __mul__

    def __truediv__(self, divisor: float) -> Quantity:
        if isinstance(divisor, Quantity):
            raise DimensionError("quotients of quantities are not supported")
        return Quantity(self.value / divisor, self.dimension)

    def to(self, unit: str) -> float:
        """Value expressed in ``unit``."""
        key, dimension, scale = _resolve(unit)
        if dimension != self.dimension:
            raise DimensionError(f"cannot express {self.dimension} in {key!r} ({dimension})")
        return self.value / scale

    def __str__(self) -> str:
        value, unit = to_lab_units(self)
        return f"{value:.6g} {unit}".rstrip()


def to_lab_units(q: Quantity, unit: str | None = None) -> tuple[float, str]:
    """Express ``q`` in its canonical lab unit, or in ``unit`` if given.

    Angular frequencies come back as the ordinary frequency in MHz with the
    label ``"2pi*MHz"``; energies as E/h in MHz with the label ``"h*MHz"``.
    """
    if not isinstance(q, Quantity) or q.dimension not in DIMENSIONS:
        raise DimensionError(f"not a registered quantity: {q!r}")
    label = _CANONICAL[q.dimension] if unit is None else _resolve(unit)[0]
    return q.to(label), label


def from_lab_units(value: float, unit: str) -> Quantity:
    """Inverse of :func:`to_lab_units`."""
    _, dimension, scale = _resolve(unit)
    return Quantity(float(value) * scale, dimension)


_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text: str | float | int, expect: str | None = None) -> Quantity:
    """Parse ``"10 um"``-style text into a :class:`Quantity`.

    Bare numbers are dimensionless.  With ``expect`` set, a quantity of any
    other dimension raises :class:`DimensionError`.
    """
    if isinstance(text, bool):
        raise UnitParseError(f"not a quantity: {text!r}")
    if isinstance(text, (int, float)):
        q = Quantity(float(text), "dimensionless")
    else:
        match = _NUMBER.match(str(text))
        if match is None:
            raise UnitParseError(f"cannot parse quantity {text!r}")
        q = from_lab_units(float(match.group(1)), match.group(2))
    if expect is not None and q.dimension != expect:
        raise DimensionError(f"expected {expect}, got {q.dimension} from {text!r}")
    return q


def convert(value: float, unit: str) -> float:
    """Internal (Gaussian) value of ``value`` given in ``unit``."""
    return from_lab_units(value, unit).value


def energy_to_mhz(energy: float) -> float:
    """E/h in MHz for an energy in erg."""
    return energy / (_TWO_PI * _C.hbar * 1e6)


def angular_to_mhz(omega: float) -> float:
    """omega/2pi in MHz for an angular frequency in rad/s."""
    return omega / (_TWO_PI * 1e6)


def unit_table() -> dict[str, tuple[str, float]]:
    """Registered labels with their dimension and internal scale."""
    return dict(_UNITS)
