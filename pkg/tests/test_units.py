import math

import pytest
from hypothesis import given, strategies as st

from rydline.errors import DimensionError, UnitParseError
from rydline.units import (
    CONSTANTS,
    DIMENSIONS,
    Quantity,
    angular_to_mhz,
    convert,
    energy_to_mhz,
    from_lab_units,
    parse_quantity,
    to_lab_units,
    unit_table,
)


def test_codata_values():
    c = CONSTANTS
    assert c.speed_of_light == 2.99792458e10
    assert c.electron_charge == pytest.approx(4.803204712570263e-10, rel=1e-15)
    assert c.bohr_radius == pytest.approx(5.29177210903e-9, rel=1e-12)
    assert c.hbar == pytest.approx(1.054571817e-27, rel=1e-12)
    assert c.boltzmann == pytest.approx(1.380649e-16, rel=1e-12)


def test_fine_structure_close_to_measured_value():
    c = CONSTANTS
    assert c.fine_structure == c.electron_charge**2 / (c.hbar * c.speed_of_light)
    assert c.fine_structure == pytest.approx(7.2973525693e-3, rel=1e-9)


def test_rydberg_energy_is_half_hartree():
    c = CONSTANTS
    assert c.rydberg_energy == pytest.approx(c.electron_charge**2 / (2 * c.bohr_radius), rel=1e-15)
    # 13.6057 eV
    assert c.rydberg_energy / 1.602176634e-12 == pytest.approx(13.6057, rel=1e-5)


@pytest.mark.parametrize(
    "text, dimension, internal",
    [
        ("10 um", "length", 1e-3),
        ("3 mm", "length", 0.3),
        ("100 mK", "temperature", 0.1),
        ("50 kHz", "ordinary-frequency", 5e4),
        ("1 2pi*MHz", "angular-frequency", 2 * math.pi * 1e6),
        ("0.1 ohm", "resistance", 0.1 / 8.987551787368176e11),
        ("1 fF", "capacitance", 1e-15 * 8.987551787368176e11),
        ("1 uV", "voltage", 1e-6 / 299.792458),
        ("7", "dimensionless", 7.0),
        ("10 μm", "length", 1e-3),
    ],
)
def test_parse_quantity(text, dimension, internal):
    q = parse_quantity(text)
    assert q.dimension == dimension
    assert q.value == pytest.approx(internal, rel=1e-12)


@pytest.mark.parametrize("bad", ["ten um", "10 furlongs", "", "um"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(UnitParseError):
        parse_quantity(bad)


def test_expected_dimension_is_enforced():
    with pytest.raises(DimensionError):
        parse_quantity("10 MHz", expect="length")


def test_angular_and_ordinary_do_not_mix():
    with pytest.raises(DimensionError):
        parse_quantity("1 MHz") + parse_quantity("1 2pi*MHz")
    with pytest.raises(DimensionError):
        parse_quantity("1 MHz").to("2pi*MHz")


def test_quantity_arithmetic():
    a = parse_quantity("1 mm") + parse_quantity("10 um")
    assert a.to("um") == pytest.approx(1010.0)
    assert (2 * a).to("mm") == pytest.approx(2.02)
    assert (a / 2).to("mm") == pytest.approx(0.505)
    with pytest.raises(DimensionError):
        a * a


def test_energy_labels_are_e_over_h():
    E = 2 * math.pi * CONSTANTS.hbar * 3e6  # h * 3 MHz
    assert energy_to_mhz(E) == pytest.approx(3.0)
    assert to_lab_units(Quantity(E, "energy")) == (pytest.approx(3.0), "h*MHz")
    assert angular_to_mhz(2 * math.pi * 5e6) == pytest.approx(5.0)


def test_every_dimension_has_a_canonical_unit():
    for dimension in DIMENSIONS:
        value, label = to_lab_units(Quantity(1.0, dimension))
        assert unit_table()[label][0] == dimension


@given(
    value=st.floats(min_value=-1e12, max_value=1e12, allow_nan=False),
    label=st.sampled_from(sorted(unit_table())),
)
def test_lab_round_trip(value, label):
    q = from_lab_units(value, label)
    back, unit = to_lab_units(q, label)
    assert unit == label
    assert back == pytest.approx(value, rel=1e-12, abs=1e-300)


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_convert_matches_parse(value):
    assert convert(value, "um") == pytest.approx(parse_quantity(f"{value!r} um").value, rel=1e-15)
