import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import DISC_CAPACITANCE_FF, FREE_SPACE_RATIO, MM, STATIC_COUPLING_HZ, UM
from rydline.electrostatics import (
    Geometry,
    coupling_coefficient_full,
    coupling_coefficient_simple,
    disc_capacitance,
    eliminated_energy,
    equilibrium_charges,
    field_on_axis,
    free_space_coupling,
    total_energy,
    wire_capacitance,
)
from rydline.errors import DomainError
from rydline.rydberg import dipole_matrix_element
from rydline.units import CONSTANTS, convert

lengths = st.floats(min_value=1e-5, max_value=1.0)
dipoles = st.floats(min_value=-1e-13, max_value=1e-13)


def test_capacitances():
    assert disc_capacitance(10 * UM) == pytest.approx(convert(DISC_CAPACITANCE_FF, "fF"), rel=1e-4)
    assert disc_capacitance(1.0) == pytest.approx(2 / math.pi)
    assert wire_capacitance(3 * MM) == pytest.approx(0.15)
    assert wire_capacitance(3 * MM, ln_ba=2.0) == pytest.approx(0.075)


def test_field_on_axis():
    assert field_on_axis(2.0, 3.0, 4.0) == pytest.approx(2.0 / 25.0)
    with pytest.raises(DomainError):
        field_on_axis(1.0, 0.0, 0.0)


@pytest.mark.parametrize("kwargs", [dict(disc_radius=0.0), dict(atom_height=-1.0), dict(wire_length=math.inf)])
def test_geometry_validation(kwargs):
    base = dict(disc_radius=1e-3, atom_height=1e-3, wire_length=0.3)
    base.update(kwargs)
    with pytest.raises(DomainError):
        Geometry(**base)


def test_long_wire_flag():
    assert Geometry.optimal(10 * UM, 3 * MM).is_long_wire
    assert not Geometry.optimal(10 * UM, 50 * UM).is_long_wire


@given(R=lengths, h=lengths, L=lengths, dA=dipoles, dB=dipoles)
def test_equilibrium_is_stationary(R, h, L, dA, dB):
    geom = Geometry(R, h, L)
    q = equilibrium_charges(dA, dB, geom)
    scale = max(abs(q.q_A), abs(q.q_B), 1e-30)
    step = 1e-4 * scale
    for dq in ((step, 0.0), (0.0, step)):
        plus = total_energy(q.q_A + dq[0], q.q_B + dq[1], dA, dB, geom)
        minus = total_energy(q.q_A - dq[0], q.q_B - dq[1], dA, dB, geom)
        centre = total_energy(q.q_A, q.q_B, dA, dB, geom)
        slope = (plus - minus) / (2 * step)
        curvature = (plus - 2 * centre + minus) / step**2
        assert abs(slope) * step <= 1e-6 * abs(curvature) * step**2 + 1e-12 * abs(centre) + 1e-300
        assert curvature > 0


@given(R=lengths, h=lengths, L=lengths)
def test_cross_term_matches_closed_form(R, h, L):
    geom = Geometry(R, h, L)
    d = 1e-15
    cross = eliminated_energy(d, d, geom)["cross"]
    assert cross == pytest.approx(coupling_coefficient_full(geom) * d * d, rel=1e-8)


def test_full_reduces_to_simple_for_long_wire():
    h, L = 10 * UM, 3 * MM
    full = coupling_coefficient_full(Geometry.optimal(h, L))
    simple = coupling_coefficient_simple(h, L)
    # exact relation at R = h, ln(b/a) = 1
    assert full / simple == pytest.approx(1.0 / (1.0 + 8 * h / (math.pi * L)), rel=1e-12)


def test_static_coupling_and_free_space_ratio():
    h, L = 10 * UM, 3 * MM
    d = dipole_matrix_element(50)
    H_int = coupling_coefficient_simple(h, L) * d * d
    assert H_int / (2 * math.pi * CONSTANTS.hbar) == pytest.approx(STATIC_COUPLING_HZ, rel=1e-4)
    ratio = coupling_coefficient_simple(h, L) / free_space_coupling(L)
    assert ratio == pytest.approx(FREE_SPACE_RATIO, rel=1e-5)
    assert ratio == pytest.approx(2 / math.pi**2 * (L / h) ** 2, rel=1e-12)


@given(h=st.floats(1e-4, 1e-2), ratio=st.floats(2.0, 1e4))
def test_simple_coupling_scales(h, ratio):
    L = ratio * h
    J = coupling_coefficient_simple(h, L)
    assert coupling_coefficient_simple(2 * h, L) == pytest.approx(J / 4, rel=1e-12)
    assert coupling_coefficient_simple(h, 2 * L) == pytest.approx(J / 2, rel=1e-12)


def test_self_terms_are_negative():
    geom = Geometry.optimal(10 * UM, 3 * MM)
    parts = eliminated_energy(1e-15, 1e-15, geom)
    assert parts["self_A"] < 0 and parts["self_B"] < 0
    assert parts["total"] == pytest.approx(parts["cross"] + parts["self_A"] + parts["self_B"], rel=1e-12)
    assert np.isfinite(parts["total"])
