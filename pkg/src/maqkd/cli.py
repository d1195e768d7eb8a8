"""Command line interface.

Verbs: ``validate`` (check a config), ``run`` (single point), ``sweep``
(parameter grid), ``orbit`` (phase sweep plus pass-averaged rates) and
``report`` (recompute rates from dumped sample records).  Exit codes: 0 on
success, 2 for configuration errors, 3 for simulation errors, 4 for I/O
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from . import analysis, runner
from .config import ConfigError, parse_config
from .runner import SweepPoint

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIMULATION = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maqkd",
        description="Monte Carlo simulation of memory-assisted satellite QKD",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON or YAML configuration file")
        p.add_argument("--seed", type=int, help="override run.seed")
        p.add_argument("--workers", type=int, help="override run.workers")
        p.add_argument("--out", help="override run.output_dir")
        p.add_argument(
            "--format",
            choices=["csv", "json", "both"],
            help="override run.formats",
        )
        p.add_argument(
            "--samples-override",
            type=int,
            help="sample count for every point, ignoring run.samples",
        )

    validate = sub.add_parser("validate", help="check a config and echo it back")
    validate.add_argument("--config", help="JSON or YAML configuration file")

    run_cmd = sub.add_parser("run", help="simulate the configured single point")
    common(run_cmd)
    run_cmd.add_argument("--stem", default="run", help="output file stem")

    sweep = sub.add_parser("sweep", help="run the configured parameter grid")
    common(sweep)
    sweep.add_argument("--stem", default="sweep", help="output file stem")

    orbit = sub.add_parser("orbit", help="orbit-phase sweep with pass averages")
    common(orbit)
    orbit.add_argument("--stem", default="orbit", help="output file stem")

    report = sub.add_parser(
        "report", help="recompute key rates from dumped sample records"
    )
    report.add_argument("records", nargs="+", help="record dump CSV files")
    return parser


def _load_config(args):
    config = parse_config(getattr(args, "config", None))
    if getattr(args, "seed", None) is not None:
        config["run"]["seed"] = args.seed
    if getattr(args, "workers", None) is not None:
        config["run"]["workers"] = args.workers
    if getattr(args, "out", None) is not None:
        config["run"]["output_dir"] = args.out
    fmt = getattr(args, "format", None)
    if fmt is not None:
        config["run"]["formats"] = ["csv", "json"] if fmt == "both" else [fmt]
    return config


def _emit(config, results, stem: str, wall: float, extra=None) -> None:
    written = runner.write_outputs(
        config, results, config["run"]["output_dir"], stem, wall, extra
    )
    for kind, path in written.items():
        print(f"wrote {kind}: {path}")
    failures = [r for r in results if r.status != "ok"]
    if failures:
        print(f"{len(failures)} of {len(results)} points failed", file=sys.stderr)


def cmd_validate(args) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        config = parse_config(args.config)
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)
    print(json.dumps(config.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_run(args) -> int:
    config = _load_config(args)
    points = [
        SweepPoint(scenario=scenario, overrides=())
        for scenario in config.scenarios()
    ]
    results, wall = runner.timed(
        runner.run_sweep,
        config,
        points,
        args.samples_override,
        config["run"]["dump_records"],
    )
    _emit(config, results, args.stem, wall)
    return EXIT_OK if all(r.status == "ok" for r in results) else EXIT_SIMULATION


def cmd_sweep(args) -> int:
    config = _load_config(args)
    # with no axes configured this degenerates to one row per scenario
    points = runner.expand_sweep(config)
    start = time.perf_counter()
    results = runner.run_sweep(
        config, points, args.samples_override, config["run"]["dump_records"]
    )
    _emit(config, results, args.stem, time.perf_counter() - start)
    return EXIT_OK if all(r.status == "ok" for r in results) else EXIT_SIMULATION


def cmd_orbit(args) -> int:
    config = _load_config(args)
    start = time.perf_counter()
    all_results = []
    summaries = []
    for scenario in config.scenarios():
        results, _, _, summary = runner.run_orbit_sweep(
            config, scenario, args.samples_override
        )
        all_results.extend(results)
        summaries.append(summary)
    wall = time.perf_counter() - start
    _emit(config, all_results, args.stem, wall, extra={"orbit_summaries": summaries})
    for summary in summaries:
        print(json.dumps(summary, indent=2))
    return (
        EXIT_OK
        if all(r.status == "ok" for r in all_results)
        else EXIT_SIMULATION
    )


def cmd_report(args) -> int:
    for path in args.records:
        try:
            records = runner.read_records_csv(path)
        except OSError as exc:
            print(f"cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_IO
        if not records:
            print(f"{path}: no records", file=sys.stderr)
            return EXIT_SIMULATION
        result = analysis.key_rate(records, records[-1].time_s)
        print(
            json.dumps(
                {
                    "records": path,
                    "samples": result.samples,
                    "raw_rate_hz": result.raw_rate_hz,
                    "error_x": result.error_x,
                    "error_z": result.error_z,
                    "key_rate_hz": result.key_rate_hz,
                    "key_rate_se": result.key_rate_se,
                },
                indent=2,
            )
        )
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "run": cmd_run,
        "sweep": cmd_sweep,
        "orbit": cmd_orbit,
        "report": cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # pragma: no cover - defensive
        print(f"simulation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SIMULATION


if __name__ == "__main__":
    sys.exit(main())
