"""Run configuration: JSON documents in lab units, parsed into Gaussian values.

Missing fields take the defaults in :data:`DEFAULTS` (N = 50, h = 10 um,
L = 3 mm, n = 1, Q = 1e6, T = 100 mK, trap 50 kHz, ln(b/a) = 1, v = v0).
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .electrostatics import Geometry
from .errors import ConfigError, RydlineError
from .rydberg import AtomSpec, SurfaceEnvironment
from .units import parse_quantity

__all__ = [
    "DEFAULTS",
    "RunConfig",
    "SimulationConfig",
    "load_schema",
    "load_document",
    "apply_override",
    "build_config",
    "load_config",
    "sweepable_fields",
]

DEFAULTS: dict[str, Any] = {
    "geometry": {
        "disc_radius": None,
        "atom_height": "10 um",
        "wire_length": "3 mm",
        "log_coax_ratio": 1.0,
        "pillar_height": "30 um",
    },
    "atom": {
        "principal_n": 50,
        "species_mass": "86.909180531 amu",
        "trap_frequency": "50 kHz",
        "transition_frequency": None,
    },
    "resonator": {
        "mode_index": 1,
        "Q": 1e6,
        "velocity_ratio": 1.0,
        "contact_resistance": "0.1 ohm",
        "dielectric_q": None,
        "external_caps": [],
    },
    "environment": {
        "temperature": "100 mK",
        "patch_shift": "7 MHz",
        "stray_island_radius": "10 um",
        "stray_island_distance": "10 um",
        "stark_k": None,
        "orbital_l": 1,
        "atomic_dephasing": "1 kHz",
        "gamma_decay": "1 kHz",
        "gamma_phi": "1 kHz",
        "interaction_time": None,
    },
    "simulation": {
        "scenario": "vacuum_rabi",
        "times": None,
        "n_max": 8,
        "rtol": 1e-9,
        "atol": 1e-12,
        "lossless": False,
        "detuning": "0 MHz",
    },
    "output": {"format": None, "path": None},
}

# sections whose numeric leaves may be swept
_SWEEP_SECTIONS = ("geometry", "atom", "resonator", "environment")


def load_schema() -> dict:
    text = resources.files("rydline").joinpath("config_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class SimulationConfig:
    scenario: str
    times: np.ndarray | None
    n_max: int
    rtol: float
    atol: float
    lossless: bool
    detuning: float


@dataclass(frozen=True)
class RunConfig:
    """A fully parsed configuration; all physical values are Gaussian-CGS."""

    geometry: Geometry
    atom: AtomSpec
    transition_frequency: float | None
    mode_index: int
    Q: float | None
    velocity_ratio: float
    contact_resistance: float
    dielectric_q: float | None
    external_caps: tuple[tuple[str, float], ...]
    temperature: float
    environment: SurfaceEnvironment
    stark_k: int | None
    orbital_l: int
    atomic_dephasing: float
    gamma_decay: float
    gamma_phi: float
    interaction_time: float | None
    simulation: SimulationConfig
    output_format: str | None
    output_path: str | None
    document: dict = field(repr=False, compare=False, default_factory=dict)


def _merge(base: dict, update: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def load_document(path: str | Path | None) -> dict:
    """Read a JSON config file; an empty file is an empty document."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    if not text.strip():
        return {}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


def _parse_override_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(doc: dict, assignment: str) -> dict:
    """Apply one ``dotted.path=value`` override; the value is JSON or a plain string."""
    if "=" not in assignment:
        raise ConfigError(f"override {assignment!r} must look like key=value")
    key, _, raw = assignment.partition("=")
    parts = key.strip().split(".")
    if not all(parts):
        raise ConfigError(f"malformed override key {key!r}")
    out = copy.deepcopy(doc)
    node = out
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"override {key!r} descends into a non-object")
    node[parts[-1]] = _parse_override_value(raw.strip())
    return out


def _validate(doc: dict) -> None:
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for err in errors:
            where = ".".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{where}: {err.message}")
        raise ConfigError("invalid configuration:\n  " + "\n  ".join(lines))


def _quantity(doc: dict, path: str, dimension: str) -> float:
    section, name = path.split(".")
    raw = doc[section][name]
    try:
        return parse_quantity(raw, expect=dimension).value
    except RydlineError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _angular(doc: dict, path: str) -> float:
    """Ordinary-frequency field converted to rad/s."""
    return 2.0 * math.pi * _quantity(doc, path, "ordinary-frequency")


def _times(raw) -> np.ndarray | None:
    if raw is None:
        return None
    try:
        if isinstance(raw, list):
            values = [
                parse_quantity(v).value * 1e-6
                if isinstance(v, (int, float))
                else parse_quantity(v, expect="time").value
                for v in raw
            ]
            return np.array(values, dtype=float)
        start = parse_quantity(raw.get("start", "0 us"), expect="time").value
        stop = parse_quantity(raw["stop"], expect="time").value
        return np.linspace(start, stop, int(raw.get("num", 201)))
    except RydlineError as exc:
        raise ConfigError(f"simulation.times: {exc}") from exc


def build_config(doc: dict) -> RunConfig:
    """Validate ``doc`` against the schema, merge defaults, parse units."""
    _validate(doc)
    full = _merge(DEFAULTS, doc)
    g, a, r, e, s, o = (full[k] for k in ("geometry", "atom", "resonator", "environment", "simulation", "output"))
    try:
        h = _quantity(full, "geometry.atom_height", "length")
        R = h if g["disc_radius"] is None else _quantity(full, "geometry.disc_radius", "length")
        geometry = Geometry(
            disc_radius=R,
            atom_height=h,
            wire_length=_quantity(full, "geometry.wire_length", "length"),
            log_coax_ratio=float(g["log_coax_ratio"]),
            pillar_height=_quantity(full, "geometry.pillar_height", "length"),
        )
        atom = AtomSpec(
            principal_n=int(a["principal_n"]),
            species_mass=_quantity(full, "atom.species_mass", "mass"),
            trap_frequency=_angular(full, "atom.trap_frequency"),
        )
        environment = SurfaceEnvironment(
            atom_height=h,
            patch_shift=_angular(full, "environment.patch_shift"),
            stray_island_radius=_quantity(full, "environment.stray_island_radius", "length"),
            stray_island_distance=_quantity(full, "environment.stray_island_distance", "length"),
        )
    except ConfigError:
        raise
    except RydlineError as exc:
        raise ConfigError(str(exc)) from exc

    simulation = SimulationConfig(
        scenario=s["scenario"],
        times=_times(s["times"]),
        n_max=int(s["n_max"]),
        rtol=float(s["rtol"]),
        atol=float(s["atol"]),
        lossless=bool(s["lossless"]),
        detuning=_angular(full, "simulation.detuning"),
    )
    return RunConfig(
        geometry=geometry,
        atom=atom,
        transition_frequency=(
            None if a["transition_frequency"] is None else _angular(full, "atom.transition_frequency")
        ),
        mode_index=int(r["mode_index"]),
        Q=None if r["Q"] is None else float(r["Q"]),
        velocity_ratio=float(r["velocity_ratio"]),
        contact_resistance=_quantity(full, "resonator.contact_resistance", "resistance"),
        dielectric_q=None if r["dielectric_q"] is None else float(r["dielectric_q"]),
        external_caps=tuple((c["label"], float(c["Q"])) for c in r["external_caps"]),
        temperature=_quantity(full, "environment.temperature", "temperature"),
        environment=environment,
        stark_k=e["stark_k"],
        orbital_l=int(e["orbital_l"]),
        atomic_dephasing=_angular(full, "environment.atomic_dephasing"),
        gamma_decay=_angular(full, "environment.gamma_decay"),
        gamma_phi=_angular(full, "environment.gamma_phi"),
        interaction_time=(
            None if e["interaction_time"] is None else _quantity(full, "environment.interaction_time", "time")
        ),
        simulation=simulation,
        output_format=o["format"],
        output_path=o["path"],
        document=full,
    )


def load_config(path: str | Path | None = None, overrides: list[str] | tuple = ()) -> RunConfig:
    doc = load_document(path)
    for assignment in overrides:
        doc = apply_override(doc, assignment)
    return build_config(doc)


def sweepable_fields() -> list[str]:
    """Dotted paths of the scalar fields a sweep may vary."""
    schema = load_schema()["properties"]
    out = []
    for section in _SWEEP_SECTIONS:
        for name, spec in schema[section]["properties"].items():
            if spec.get("type") == "array":
                continue
            out.append(f"{section}.{name}")
    return out
