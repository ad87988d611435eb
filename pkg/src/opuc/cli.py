"""Command line entry point: ``opuc identities | trend | probe``.

Exit codes: 0 success, 1 tolerance failure, 2 configuration error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import ConfigError, OPUCError
from .experiments import (
    ExperimentConfig,
    emit_report,
    render_report,
    run_conjecture_probe,
    run_identities,
    run_theorem_trend,
)

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


def _n_values(text: str) -> list[int]:
    try:
        return [int(k) for k in text.split(",") if k.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad n-values {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opuc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ident = sub.add_parser("identities", help="seeded identity and inequality suite")
    ident.add_argument("--trials", type=int, default=1000)
    ident.add_argument("--seed", type=int, default=0)
    ident.add_argument("--tol", type=float, default=1e-12)
    ident.add_argument("--config", type=Path, help="JSON with trials/seed/tol; overrides flags")

    for name, text in (("trend", "convergence table for a theorem profile"),
                       ("probe", "exploratory table for a profile of order >= 3")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", type=Path, help="JSON experiment config; overrides flags")
        p.add_argument("--profile", help='singular points as "theta:mult,theta:mult" (radians)')
        p.add_argument("--n-values", type=_n_values, help="comma separated truncation orders")
        p.add_argument("--atol", type=float)
        p.add_argument("--alpha-file", type=Path, help="JSON array of [re, im] pairs")
        p.add_argument("--family", help="family as a JSON object, e.g. '{\"kind\": \"power\", ...}'")
        p.add_argument("--out", type=Path, help="report path; stdout when omitted")
        p.add_argument("--format", choices=("csv", "json"))
    return parser


def _read_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data


def _experiment_config(args) -> ExperimentConfig:
    d: dict = {}
    if args.family is not None:
        try:
            d["family"] = json.loads(args.family)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--family is not valid JSON: {exc}") from exc
    flags = {
        "profile": args.profile,
        "n_values": args.n_values,
        "atol": args.atol,
        "alpha_file": args.alpha_file,
        "output_path": args.out,
        "format": args.format,
    }
    d.update({k: v for k, v in flags.items() if v is not None})
    if args.config is not None:
        d.update(_read_json(args.config))
    return ExperimentConfig.from_dict(d)


def _run_identities(args) -> int:
    opts = {"trials": args.trials, "seed": args.seed, "tol": args.tol}
    if args.config is not None:
        extra = _read_json(args.config)
        unknown = set(extra) - set(opts)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        opts.update(extra)
    report = run_identities(int(opts["trials"]), int(opts["seed"]), float(opts["tol"]))
    print("\n".join(report.lines()))
    return report.exit_code


def _run_table(args, runner) -> int:
    config = _experiment_config(args)
    rows = runner(config)
    if config.output_path is None:
        sys.stdout.write(render_report(rows, config.format))
    else:
        emit_report(rows, config.format, config.output_path)
    failed = any(math.isnan(r.entropy_value) for r in rows)
    return EXIT_NUMERIC if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "identities":
            return _run_identities(args)
        runner = run_theorem_trend if args.command == "trend" else run_conjecture_probe
        return _run_table(args, runner)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OPUCError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
