"""The computations behind the command-line subcommands.

Each function takes a parsed :class:`~rydline.config.RunConfig` and returns
plain data; formatting and I/O live in :mod:`rydline.cli`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import dynamics, electrostatics, resonator, rydberg
from .config import RunConfig, apply_override, build_config, sweepable_fields
from .errors import ConfigError
from .rydberg import BudgetReport
from .units import CONSTANTS

__all__ = [
    "OperatingPoint",
    "operating_point",
    "estimate_report",
    "budget_report",
    "check_validity",
    "sweep",
    "SimulationResult",
    "simulate",
    "SCENARIOS",
]

SCENARIOS = ("vacuum_rabi", "state_transfer", "two_atom_exchange")


@dataclass(frozen=True)
class OperatingPoint:
    """Derived quantities shared by the estimate, budget and simulation."""

    velocity: float
    transition_frequency: float
    mode: resonator.ModeSpec
    q_budget: resonator.QBudget
    Q: float
    d_z: float
    g: float

    @property
    def g_rate(self) -> float:
        """g / hbar in rad/s."""
        return self.g / CONSTANTS.hbar


def operating_point(cfg: RunConfig) -> OperatingPoint:
    geom = cfg.geometry
    v = cfg.velocity_ratio * CONSTANTS.speed_of_light
    N = cfg.atom.principal_n
    omega_atom = (
        rydberg.transition_frequency(N) if cfg.transition_frequency is None else cfg.transition_frequency
    )
    budget = resonator.q_budget(
        geom,
        cfg.contact_resistance,
        cfg.external_caps,
        math.inf if cfg.dielectric_q is None else cfg.dielectric_q,
    )
    Q = budget.q_total if cfg.Q is None else cfg.Q
    mode = resonator.build_mode(cfg.mode_index, geom, v, Q)
    d_z = rydberg.dipole_matrix_element(N)
    g = resonator.coupling_g(d_z, omega_atom, geom.atom_height, geom.wire_length)
    return OperatingPoint(v, omega_atom, mode, budget, Q, d_z, g)


def estimate_report(cfg: RunConfig) -> BudgetReport:
    """Single-point design table: capacitances, mode, dipole, g in three forms, kappa."""
    geom = cfg.geometry
    op = operating_point(cfg)
    N, n = cfg.atom.principal_n, cfg.mode_index
    h, L = geom.atom_height, geom.wire_length
    omega = op.transition_frequency
    L_res = resonator.resonant_length(n, op.velocity, omega)

    # three forms evaluated on matched inputs (wire at the resonant length)
    g_matched = resonator.coupling_g(op.d_z, omega, h, L_res)
    g_alpha = resonator.coupling_g_dimensionless(N, n, op.velocity, h, omega)
    g_volume = resonator.coupling_g_mode_volume(op.d_z, omega, resonator.mode_volume(h, L_res))
    spread = max(abs(g_alpha / g_matched - 1.0), abs(g_volume / g_matched - 1.0))

    J_full = electrostatics.coupling_coefficient_full(geom)
    J_simple = electrostatics.coupling_coefficient_simple(h, L)
    J_free = electrostatics.free_space_coupling(L)
    d2 = op.d_z**2

    r = BudgetReport()
    r.add("disc_capacitance", geom.disc_capacitance, "capacitance", "fF", "2R/pi")
    r.add("wire_capacitance", geom.wire_capacitance, "capacitance", "fF", "L / (2 ln(b/a))")
    r.add("mode_frequency", op.mode.frequency, "angular-frequency", "2pi*GHz", "n pi v / L")
    r.add("transition_frequency", omega, "angular-frequency", "2pi*GHz",
          "hydrogenic N -> N-1" if cfg.transition_frequency is None else "user input")
    r.add("resonant_wire_length", L_res, "length", "mm", "n pi v / omega")
    r.add("mode_detuning_fraction", omega / op.mode.frequency - 1.0, "dimensionless",
          note="(omega_atom - omega_mode) / omega_mode")
    r.add("dipole_matrix_element", op.d_z, "dipole", "e*a0", "e N^2 a0 / (3 sqrt 3)")
    r.add("zero_point_charge", op.mode.zero_point_charge, "charge", "e", "sqrt(hbar / (2 m_n omega_n))")
    r.add("g", op.g, "energy", "h*MHz", "d sqrt(2 hbar omega / (pi^2 h^2 L)) at the configured L")
    r.add("g_mode_volume_form", resonator.coupling_g_mode_volume(op.d_z, omega, resonator.mode_volume(h, L)),
          "energy", "h*MHz", "d sqrt(2 pi hbar omega / V) at the configured L")
    r.add("g_resonant", g_matched, "energy", "h*MHz", "closed form at the resonant length")
    r.add("g_alpha_form", g_alpha, "energy", "h*MHz", "fine-structure form, resonant length implied")
    r.add("g_forms_max_rel_diff", spread, "dimensionless", note="three forms on matched inputs")
    r.add("g_over_hbar_omega", op.g / (CONSTANTS.hbar * omega), "dimensionless",
          note="rotating-wave validity needs << 1")
    r.add("mode_volume", resonator.mode_volume(h, L), "volume", "mm^3", "pi^3 h^2 L")
    r.add("Q", op.Q, "dimensionless", note="configured" if cfg.Q is not None else "Q budget total")
    r.add("kappa", op.mode.decay_rate, "angular-frequency", "2pi*kHz", "omega_n / Q")
    r.add("static_coupling_full", J_full * d2, "energy", "h*kHz", "adiabatic elimination, two N-dipoles")
    r.add("static_coupling_simple", J_simple * d2, "energy", "h*kHz", "R = h, L >> R limit")
    r.add("static_coupling_free_space", J_free * d2, "energy", "h*kHz", "d^2 / L^3 comparator")
    r.add("static_enhancement", J_simple / J_free, "dimensionless", note="(2/pi^2) L^2 / h^2")
    return r


def budget_report(cfg: RunConfig) -> BudgetReport:
    """Decoherence budget plus the Q budget breakdown."""
    op = operating_point(cfg)
    report = rydberg.decoherence_budget(
        cfg.atom,
        cfg.environment,
        op.mode,
        op.g,
        cfg.temperature,
        wire_capacitance=cfg.geometry.wire_capacitance,
        atomic_dephasing=cfg.atomic_dephasing,
        interaction_time=cfg.interaction_time,
        stark_k=cfg.stark_k,
        ell=cfg.orbital_l,
    )
    qb = op.q_budget
    report.add("q_radiative", qb.q_radiative, "dimensionless", note="(L/H)^4 pillar radiation")
    report.add("q_contact", qb.q_contact, "dimensionless", note="1e7 at 0.1 ohm, scaled as 1/R")
    report.add("q_endcap", qb.q_endcap, "dimensionless", note="gold end caps, fixed floor")
    report.add("q_dielectric_cap", qb.q_dielectric_cap, "dimensionless", note="user input")
    for label, q in qb.external:
        report.add(f"q_external_{label}", q, "dimensionless", note="user input")
    report.add("q_total", qb.q_total, "dimensionless", note="harmonic sum of the contributions")
    report.add("Q_used", op.Q, "dimensionless", note="Q that sets kappa")
    return report


def check_validity(cfg: RunConfig) -> list[str]:
    """Warnings about approximations the configuration stretches."""
    op = operating_point(cfg)
    warnings = []
    if not cfg.geometry.is_long_wire:
        warnings.append(
            f"wire length is not >> disc radius (L/R = {cfg.geometry.wire_length / cfg.geometry.disc_radius:.3g}); "
            "closed-form capacitances lose accuracy"
        )
    ratio = op.g / (CONSTANTS.hbar * op.mode.frequency)
    if ratio > dynamics.RWA_THRESHOLD:
        warnings.append(f"g / hbar omega = {ratio:.3g} exceeds {dynamics.RWA_THRESHOLD}; rotating-wave approximation doubtful")
    return warnings


def _row(cfg: RunConfig) -> dict[str, float]:
    merged = estimate_report(cfg).to_dict()
    merged.update(budget_report(cfg).to_dict())
    return {f"{name} [{entry['unit'] or '1'}]": entry["value"] for name, entry in merged.items()}


def sweep(doc: dict, axis: str, values: list, jobs: int = 1) -> tuple[list[str], list[list]]:
    """Evaluate estimate and budget for each value of ``axis``.

    Points run concurrently; rows are returned in input order.
    """
    if axis not in sweepable_fields():
        raise ConfigError(
            f"unknown sweep axis {axis!r}; sweepable fields: " + ", ".join(sweepable_fields())
        )

    def point(value):
        text = value if isinstance(value, str) else repr(value)
        return _row(build_config(apply_override(doc, f"{axis}={text}")))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(point, values))
    else:
        rows = [point(v) for v in values]
    columns = list(rows[0]) if rows else list(_row(build_config(doc)))
    table = [[value, *(row[c] for c in columns)] for value, row in zip(values, rows)]
    return [axis, *columns], table


@dataclass
class SimulationResult:
    scenario: str
    series: dynamics.TimeSeries
    metadata: dict[str, float | str | int | bool]


def _model(cfg: RunConfig, op: OperatingPoint, atom_count: int) -> dynamics.SystemModel:
    sim = cfg.simulation
    lossless = sim.lossless
    return dynamics.SystemModel(
        atom_count=atom_count,
        couplings=op.g_rate,
        detunings=sim.detuning,
        fock_cutoff=sim.n_max,
        kappa=0.0 if lossless else op.mode.decay_rate,
        gamma_decay=0.0 if lossless else cfg.gamma_decay,
        gamma_phi=0.0 if lossless else cfg.gamma_phi,
        mode_frequency=op.mode.frequency,
    )


def simulate(cfg: RunConfig) -> SimulationResult:
    """Run the configured scenario and return its time series."""
    sim = cfg.simulation
    if sim.scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {sim.scenario!r}; choose from {', '.join(SCENARIOS)}")
    op = operating_point(cfg)
    g = op.g_rate
    atom_count = 2 if sim.scenario == "two_atom_exchange" else 1
    model = _model(cfg, op, atom_count)

    if atom_count == 1:
        start = dynamics.QuantumState.basis(model, "r2", 0)
        target = model.basis_index("r1", 1)
        t_guess = math.pi / (2.0 * g)
        default_stop = 2.0 * math.pi / g if sim.scenario == "vacuum_rabi" else math.pi / g
        targets = {"p_r1_n1": target} if sim.scenario == "vacuum_rabi" else {"fidelity": target}
    else:
        start = dynamics.QuantumState.basis(model, ("r2", "r1"), 0)
        target = model.basis_index(("r1", "r2"), 0)
        t_guess = math.pi / (math.sqrt(2.0) * g)
        default_stop = 2.0 * t_guess
        targets = {"fidelity": target}

    times = np.linspace(0.0, default_stop, 201) if sim.times is None else sim.times
    if model.is_lossless:
        series = dynamics.evolve_unitary(dynamics.build_hamiltonian(model), start, times, targets)
    else:
        series = dynamics.evolve_lindblad(model, start, times, targets, rtol=sim.rtol, atol=sim.atol)

    metadata: dict[str, float | str | int | bool] = {
        "scenario": sim.scenario,
        "g_over_2pi_MHz": g / (2e6 * math.pi),
        "kappa_over_2pi_kHz": model.kappa / (2e3 * math.pi),
        "gamma_decay_over_2pi_kHz": model.gamma_decay[0] / (2e3 * math.pi),
        "gamma_phi_over_2pi_kHz": model.gamma_phi[0] / (2e3 * math.pi),
        "detuning_over_2pi_MHz": model.detunings[0] / (2e6 * math.pi),
        "n_max": model.fock_cutoff,
        "lossless": model.is_lossless,
        "rwa_valid": model.rwa_valid,
    }
    if not any(model.detunings):
        t_star, fidelity = dynamics.first_maximum(model, start, target, t_guess)
        metadata["transfer_time_us"] = t_star * 1e6
        metadata["transfer_fidelity"] = fidelity
    return SimulationResult(sim.scenario, series, metadata)
