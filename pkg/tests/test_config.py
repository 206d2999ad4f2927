import json
import math

import numpy as np
import pytest

from rydline.config import DEFAULTS, apply_override, build_config, load_config, load_document, load_schema, sweepable_fields
from rydline.errors import ConfigError
from rydline.units import CONSTANTS


def test_defaults_are_the_flagship_point():
    cfg = build_config({})
    assert cfg.geometry.atom_height == pytest.approx(1e-3)
    assert cfg.geometry.disc_radius == cfg.geometry.atom_height
    assert cfg.geometry.wire_length == pytest.approx(0.3)
    assert cfg.atom.principal_n == 50
    assert cfg.Q == 1e6
    assert cfg.temperature == pytest.approx(0.1)
    assert cfg.atom.trap_frequency == pytest.approx(2 * math.pi * 5e4)
    assert cfg.velocity_ratio == 1.0
    assert cfg.transition_frequency is None


def test_defaults_validate_against_schema():
    build_config(json.loads(json.dumps({k: v for k, v in DEFAULTS.items()})))


def test_unknown_key_is_reported_with_path():
    with pytest.raises(ConfigError, match="geometry"):
        build_config({"geometry": {"wire_lenght": "3 mm"}})


def test_wrong_dimension_is_reported():
    with pytest.raises(ConfigError, match="geometry.wire_length"):
        build_config({"geometry": {"wire_length": "3 MHz"}})


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"geometry": {\n  "wire_length": 3 mm}}')
    with pytest.raises(ConfigError, match=r"2:\d+"):
        load_document(path)


def test_empty_file_means_defaults(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    assert load_config(path).atom.principal_n == 50


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_document(tmp_path / "nope.json")


def test_overrides():
    doc = apply_override({}, "geometry.wire_length=10 mm")
    doc = apply_override(doc, "atom.principal_n=70")
    doc = apply_override(doc, 'simulation.times={"stop": "1 us", "num": 3}')
    cfg = build_config(doc)
    assert cfg.geometry.wire_length == pytest.approx(1.0)
    assert cfg.atom.principal_n == 70
    np.testing.assert_allclose(cfg.simulation.times, [0, 5e-7, 1e-6])
    with pytest.raises(ConfigError):
        apply_override({}, "no_equals_sign")
    with pytest.raises(ConfigError):
        apply_override({}, "geometry..x=1")


def test_time_list_and_optional_fields():
    cfg = build_config({
        "simulation": {"times": ["0 us", "0.5 us"], "detuning": "1 MHz"},
        "atom": {"transition_frequency": "50 GHz"},
        "resonator": {"Q": None, "external_caps": [{"label": "dielectric", "Q": 1e5}]},
    })
    np.testing.assert_allclose(cfg.simulation.times, [0, 5e-7])
    assert cfg.simulation.detuning == pytest.approx(2 * math.pi * 1e6)
    assert cfg.transition_frequency == pytest.approx(2 * math.pi * 5e10)
    assert cfg.Q is None
    assert cfg.external_caps == (("dielectric", 1e5),)


def test_schema_and_sweepable_fields():
    schema = load_schema()
    assert schema["additionalProperties"] is False
    fields = sweepable_fields()
    assert "geometry.wire_length" in fields
    assert "resonator.external_caps" not in fields
    assert not any(f.startswith("simulation.") for f in fields)


def test_speed_of_light_is_the_default_phase_velocity():
    cfg = build_config({"resonator": {"velocity_ratio": 0.5}})
    assert cfg.velocity_ratio * CONSTANTS.speed_of_light == pytest.approx(1.49896229e10)
