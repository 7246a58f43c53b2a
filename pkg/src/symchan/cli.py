"""Command-line interface.

Subcommands: `scenario`, `channel verify`, `evolve`, `fixed-points`.
Exit codes: 0 pass, 1 assertion failure, 2 input error, 3 numerical error.
Errors are emitted as a JSON object on stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import scenarios
from .channelcore import validate_state, verify_channel
from .dynamics import fixed_points, propagate
from .errors import ConfigError, ConvergenceError, PropagationError
from .serialize import (
    channel_from_json,
    dump_json,
    generator_from_json,
    load_json,
    matrix_from_json,
    matrix_to_json,
    trajectory_states_to_json,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

_SCENARIO_TOL_KEY = {
    "bloch_shrink": "match",
    "dephase_vs_damp": "match",
    "block_depolarize": "asymptote",
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symchan",
        description="Symmetry-adapted quantum channels: scenarios, "
        "verification and propagation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scen = sub.add_parser("scenario", help="run a named scenario from a JSON config")
    p_scen.add_argument("name", choices=scenarios.SCENARIO_NAMES)
    p_scen.add_argument("--config", required=True)
    p_scen.add_argument("--tol", type=float, help="override the scenario tolerance")
    p_scen.add_argument("--csv", help="override the CSV output path")
    p_scen.add_argument("--report", help="override the JSON report path")

    p_chan = sub.add_parser("channel", help="channel operations")
    chan_sub = p_chan.add_subparsers(dest="channel_command", required=True)
    p_verify = chan_sub.add_parser("verify", help="CP/TP certification of a Kraus set")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--tol", type=float, default=1e-8)

    p_evolve = sub.add_parser("evolve", help="propagate a state under a generator")
    p_evolve.add_argument("--generator", required=True)
    p_evolve.add_argument("--state", required=True)
    p_evolve.add_argument("--tmax", type=float, required=True)
    p_evolve.add_argument("--samples", type=int, default=50)
    p_evolve.add_argument("--csv", default="trajectory.csv")
    p_evolve.add_argument("--states-json", help="optional full-state JSON sidecar")

    p_fixed = sub.add_parser("fixed-points", help="kernel of the Liouvillian")
    p_fixed.add_argument("--generator", required=True)
    p_fixed.add_argument("--tol", type=float, default=1e-10)
    p_fixed.add_argument("--output", help="write the basis to a JSON file")
    return parser


def _emit_error(kind, message):
    json.dump({"error": {"type": kind, "message": message}}, sys.stderr)
    sys.stderr.write("\n")


def _cmd_scenario(args):
    config = scenarios.load_config(args.config)
    if config["scenario"] != args.name:
        raise ConfigError(
            f"config is for scenario {config['scenario']!r}, not {args.name!r}"
        )
    if args.tol is not None:
        key = _SCENARIO_TOL_KEY.get(args.name)
        if key is not None:
            config.setdefault("tolerances", {})[key] = args.tol
    output = config.get("output") or {}
    csv_path = args.csv or output.get("csv") or f"{args.name}.csv"
    report_path = args.report or output.get("report") or f"{args.name}_report.json"

    result = scenarios.run_scenario(config)
    scenarios.write_csv(csv_path, result.csv_header, result.csv_rows)
    dump_json(result.report, report_path)
    json.dump(result.report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_PASS if result.passed else EXIT_FAIL


def _cmd_channel_verify(args):
    ch = channel_from_json(load_json(args.input))
    report = verify_channel(ch, tp_tol=args.tol, cp_tol=args.tol)
    json.dump(report.as_dict(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _cmd_evolve(args):
    gen = generator_from_json(load_json(args.generator))
    rho0 = validate_state(matrix_from_json(load_json(args.state)))
    if args.tmax <= 0 or args.samples < 2:
        raise ConfigError("evolve needs --tmax > 0 and --samples >= 2")
    times = np.linspace(0.0, args.tmax, args.samples)
    traj = propagate(gen, rho0, times)
    header = (
        ["t", "trace", "purity"] + [f"pop_{i}" for i in range(gen.dim)]
    )
    rows = []
    for t, rho in zip(traj.times, traj.states):
        rows.append(
            [t, np.trace(rho).real, np.trace(rho @ rho).real]
            + list(np.diag(rho).real)
        )
    scenarios.write_csv(args.csv, header, rows)
    if args.states_json:
        dump_json(trajectory_states_to_json(traj), args.states_json)
    return EXIT_PASS


def _cmd_fixed_points(args):
    gen = generator_from_json(load_json(args.generator))
    basis = fixed_points(gen, tol=args.tol)
    doc = {"dim": len(basis), "basis": [matrix_to_json(m) for m in basis]}
    if args.output:
        dump_json(doc, args.output)
    json.dump({"kernel_dimension": len(basis)}, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_PASS


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS
    try:
        if args.command == "scenario":
            return _cmd_scenario(args)
        if args.command == "channel":
            return _cmd_channel_verify(args)
        if args.command == "evolve":
            return _cmd_evolve(args)
        if args.command == "fixed-points":
            return _cmd_fixed_points(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ValueError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_INPUT
    except (ConvergenceError, PropagationError, ArithmeticError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
