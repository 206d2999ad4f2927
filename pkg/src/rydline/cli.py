"""``rydline`` command-line interface.

Exit codes: 0 success, 2 configuration or usage error, 3 numerical-validity
error (Fock truncation, or RWA / long-wire breach under ``--strict``).
Warnings go to stderr and never into data files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import __version__, app
from .config import apply_override, load_config, load_document, load_schema
from .errors import ConfigError, DimensionError, DomainError, IntegrationError, TruncationError, UnitParseError
from .units import CONSTANTS

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_DEFAULT_FORMAT = {"estimate": "json", "budget": "json", "sweep": "csv", "simulate": "csv"}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return _fmt(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _csv_text(header: list[str], rows: list[list], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n"


def _report_payload(command: str, report) -> dict:
    return {"command": command, "version": __version__, "quantities": report.to_dict()}


def _report_csv(report) -> str:
    rows = [[name, entry["value"], entry["unit"] or "1", entry["note"]] for name, entry in report.to_dict().items()]
    return _csv_text(["quantity", "value", "unit", "note"], rows)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="JSON run configuration")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config field by dotted path, e.g. geometry.wire_length='3 mm'")
    parser.add_argument("--output", metavar="FILE", help="write data here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument("--strict", action="store_true",
                        help="treat RWA and long-wire warnings as errors (exit 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydline",
        description="Rydberg atoms coupled to a superconducting transmission line: estimates, budgets, sweeps, simulations.",
    )
    parser.add_argument("--version", action="version", version=f"rydline {__version__}")
    parser.add_argument("--constants", action="store_true", help="print the physical constants (Gaussian CGS) and exit")
    parser.add_argument("--schema", action="store_true", help="print the configuration JSON schema and exit")
    sub = parser.add_subparsers(dest="command", metavar="{estimate,budget,sweep,simulate}")

    p = sub.add_parser("estimate", help="single-point design table")
    _common(p)
    p = sub.add_parser("budget", help="decoherence and Q budget")
    _common(p)
    p = sub.add_parser("sweep", help="estimate + budget over one config field")
    _common(p)
    p.add_argument("--axis", required=True, help="dotted config path to vary")
    p.add_argument("--values", required=True, action="append",
                   help="comma-separated values, e.g. '1 mm,3 mm,10 mm' (repeatable)")
    p.add_argument("--jobs", type=int, default=1, help="parallel sweep points")
    p = sub.add_parser("simulate", help="time evolution of a scenario")
    _common(p)
    return parser


def _split_values(chunks: list[str]) -> list:
    values = []
    for chunk in chunks:
        for item in chunk.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                values.append(json.loads(item))
            except json.JSONDecodeError:
                values.append(item)
    return values


def _warn(messages: list[str], strict: bool) -> bool:
    for message in messages:
        print(f"warning: {message}", file=sys.stderr)
    return strict and bool(messages)


def _run(args) -> int:
    cfg = load_config(args.config, args.overrides)
    fmt = args.format or cfg.output_format or _DEFAULT_FORMAT[args.command]
    out_path = args.output or cfg.output_path
    if _warn(app.check_validity(cfg), args.strict):
        return EXIT_NUMERICAL

    if args.command in ("estimate", "budget"):
        report = app.estimate_report(cfg) if args.command == "estimate" else app.budget_report(cfg)
        text = _json_text(_report_payload(args.command, report)) if fmt == "json" else _report_csv(report)
    elif args.command == "sweep":
        doc = load_document(args.config)
        for assignment in args.overrides:
            doc = apply_override(doc, assignment)
        values = _split_values(args.values)
        header, rows = app.sweep(doc, args.axis, values, jobs=max(1, args.jobs))
        if fmt == "json":
            text = _json_text({"command": "sweep", "version": __version__, "axis": args.axis,
                               "columns": header, "rows": rows})
        else:
            text = _csv_text(header, rows)
    else:
        result = app.simulate(cfg)
        if not result.metadata["rwa_valid"] and _warn(["rotating-wave approximation breached"], args.strict):
            return EXIT_NUMERICAL
        series = result.series
        names = list(series.observables)
        header = ["time_us"] + [f"{name} [1]" for name in names]
        rows = [[t * 1e6, *(float(series.observables[n][i]) for n in names)]
                for i, t in enumerate(series.times)]
        if fmt == "json":
            text = _json_text({"command": "simulate", "version": __version__, "metadata": result.metadata,
                               "columns": header, "rows": rows})
        else:
            meta = " ".join(f"{k}={_fmt(v)}" for k, v in result.metadata.items())
            text = _csv_text(header, rows, [f"rydline {__version__} {meta}"])
    _emit(text, out_path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.constants:
        payload = {name: value for name, value in CONSTANTS.as_dict().items()}
        payload["fine_structure"] = CONSTANTS.fine_structure
        payload["rydberg_energy"] = CONSTANTS.rydberg_energy
        sys.stdout.write(json.dumps({"version": __version__, "units": "gaussian-cgs", "constants": payload},
                                    indent=2) + "\n")
        return EXIT_OK
    if args.schema:
        sys.stdout.write(json.dumps(load_schema(), indent=2) + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _run(args)
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("remedy: raise simulation.n_max, e.g. --set simulation.n_max=12", file=sys.stderr)
        return EXIT_NUMERICAL
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, UnitParseError, DimensionError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
