"""Command-line interface: solve, benchmark, sweep, beam-pattern and trace exports."""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import benchmarks, harness, mwmp, swsp
from .channel import beam_pattern_grid
from .config import ExperimentConfig, load_config
from .geometry import BeamVector, PinchLayout


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="flat JSON config file")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passcovert",
        description="Covert-rate solvers and benchmarks for pinching-antenna systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("swsp", "solve the single-waveguide single-antenna instance"),
        ("mwmp", "solve the multi-waveguide instance with the twin-swarm optimizer"),
        ("bench", "evaluate the four reference schemes on the configured instance"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)

    p = sub.add_parser("sweep", help="Monte-Carlo parameter sweep")
    _add_common(p)
    p.add_argument("--variable", required=True, choices=harness.SWEEP_VARIABLES)
    p.add_argument("--values", required=True,
                   help="comma-separated sweep values, e.g. 0.8,0.85,0.9")
    p.add_argument("--schemes", default=",".join(harness.SCHEMES),
                   help="comma-separated scheme names")

    p = sub.add_parser("pattern", help="emit the solved beam pattern over a ground grid")
    _add_common(p)
    p.add_argument("--case", choices=("swsp", "mwmp"), default="swsp")

    p = sub.add_parser("converge", help="emit best-so-far solver traces")
    _add_common(p)
    p.add_argument("--case", choices=("swsp", "mwmp"), default="mwmp")

    return parser


def _load(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    return config


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_records(records, args) -> None:
    text = (harness.records_to_csv(records) if args.format == "csv"
            else harness.records_to_json(records))
    _write(text, args.out)


def _single_record(scheme: str, rate: float, power: float, seed: int) -> harness.SweepRecord:
    return harness.SweepRecord(scheme, "none", 0.0, 0, rate, power, seed)


def _solved_beam(config: ExperimentConfig, case: str):
    """Layout and full beamformer of the solved instance for pattern export."""
    if case == "swsp":
        sc = config.scenario("swsp")
        sol = swsp.solve(sc, config.delta_p())
        if not sol.feasible:
            raise ValueError("configured instance is covertness-infeasible; no pattern")
        layout = PinchLayout(sc.geom, np.array([sol.x_opt]))
        return sc, layout, BeamVector(np.ones(1, dtype=complex), sol.p_opt)
    sc = config.scenario("mwmp")
    sol = mwmp.solve(sc, config.pso_params(), k=config.willie_samples_k)
    layout = PinchLayout(sc.geom, sol.x_init)
    return sc, layout, BeamVector(sol.w_tilde, sol.power)


def _pattern_csv(config: ExperimentConfig, case: str) -> str:
    sc, layout, beam = _solved_beam(config, case)
    res = config.pattern_res_m
    xs = np.linspace(0.0, sc.geom.length, round(sc.geom.length / res) + 1)
    half = config.pattern_y_halfwidth_m
    ys = np.linspace(-half, half, round(2.0 * half / res) + 1)
    grid = beam_pattern_grid(layout, beam, xs, ys, sc.pc, normalize=True)
    lines = ["x,y,gain_normalized"]
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            lines.append(f"{x:.17g},{y:.17g},{grid[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load(args)
        if args.command == "swsp":
            sc = config.scenario("swsp")
            sol = swsp.solve(sc, config.delta_p())
            _emit_records([_single_record("swsp", sol.rate, sol.p_opt, config.seed)], args)
        elif args.command == "mwmp":
            sc = config.scenario("mwmp")
            sol = mwmp.solve(sc, config.pso_params(), k=config.willie_samples_k)
            _emit_records([_single_record("mwmp", sol.rate, sol.power, config.seed)], args)
        elif args.command == "bench":
            sc = config.scenario("mwmp")
            records = []
            for kind in benchmarks.BenchmarkKind:
                res = benchmarks.evaluate(kind, sc, k=config.willie_samples_k)
                records.append(_single_record(kind.value, res.rate, res.power, config.seed))
            _emit_records(records, args)
        elif args.command == "sweep":
            values = [float(v) for v in args.values.split(",") if v]
            schemes = [s.strip() for s in args.schemes.split(",") if s.strip()]
            records = harness.run_sweep(config, args.variable, values, schemes)
            _emit_records(records, args)
        elif args.command == "pattern":
            _write(_pattern_csv(config, args.case), args.out)
        elif args.command == "converge":
            _emit_records(harness.run_convergence(config, args.case), args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
