"""rydline: Rydberg atoms capacitively coupled to a superconducting transmission line.

Submodules
----------
units           constants and the lab-unit boundary (Gaussian CGS inside)
electrostatics  disc/wire capacitances and the static dipole-dipole coupling
resonator       quantized line modes, the coupling g, Q budget, thermal noise
rydberg         hydrogenic dipoles, van der Waals and Stark shifts, heating
dynamics        Jaynes-Cummings and Lindblad evolution, concurrence
kernels         numba-accelerated integrator with a pure-numpy fallback
"""

__version__ = "0.1.0"

from .units import CONSTANTS, Quantity, from_lab_units, parse_quantity, to_lab_units  # noqa: E402

__all__ = ["__version__", "CONSTANTS", "Quantity", "from_lab_units", "parse_quantity", "to_lab_units"]
