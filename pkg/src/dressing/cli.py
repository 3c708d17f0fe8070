"""Command-line entry point for the verification suites.

Exit codes: 0 when every case passes, 1 when any case fails, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import (
    SUITES,
    ConfigError,
    ScenarioConfig,
    parse_config,
    run_suite,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run seeded verification suites for the dressing identities "
        "and write a machine-readable report.",
    )
    parser.add_argument("--suite", choices=SUITES + ("all",), help="suite to run (default: all)")
    parser.add_argument("--config", metavar="FILE", help="JSON configuration file")
    parser.add_argument("--seed", type=int, help="RNG seed (unsigned 64-bit)")
    parser.add_argument("--trials", type=int, help="trials per property sweep")
    parser.add_argument("--tol", type=float, help="override every case tolerance")
    parser.add_argument("--report", metavar="OUT.json", help="write the JSON report here")
    parser.add_argument("--quiet", action="store_true", help="suppress per-case output")
    return parser


def _load_config(args: argparse.Namespace) -> ScenarioConfig:
    if args.config is not None:
        cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    else:
        cfg = ScenarioConfig()
    if args.suite is not None:
        cfg.suite = args.suite
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError(f"seed: {args.seed} outside unsigned 64-bit range")
        cfg.seed = args.seed
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError(f"trials: must be >= 1, got {args.trials}")
        cfg.trials = args.trials
    if args.tol is not None:
        if args.tol <= 0:
            raise ConfigError(f"tol: must be positive, got {args.tol}")
        cfg.tol_override = args.tol
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ConfigError, OSError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2

    report = run_suite(cfg)

    if not args.quiet:
        for case in report.cases:
            status = "PASS" if case.passed else "FAIL"
            print(f"{status}  {case.name:<45} residual={case.residual:.3e}  tol={case.tolerance:.1e}")
        n_pass = sum(c.passed for c in report.cases)
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict}: {n_pass}/{len(report.cases)} cases passed (suite={report.suite}, seed={report.seed})")

    if args.report is not None:
        Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")

    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
