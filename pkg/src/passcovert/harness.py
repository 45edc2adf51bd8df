"""Seeded Monte-Carlo scenario generation, parameter sweeps, and record emission."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import benchmarks, mwmp, swsp
from .config import ExperimentConfig
from .detection import CovertnessSpec, WillieUncertainty
from .scenario import Scenario

SCHEMES = ("swsp", "mwmp", "mimo_zf", "mimo_mrt", "pass_zf", "pass_mrt")
SWEEP_VARIABLES = ("target_error_rate", "power_budget", "uncertainty_radius")

CSV_HEADER = ("scheme", "sweep_variable", "sweep_value", "trial",
              "covert_rate_bps_hz", "p_opt_watts", "seed")

_SCENARIO_Y_HALFWIDTH = 7.5  # m, Monte-Carlo region is [0, L] x [-7.5, 7.5]
_MIN_SEPARATION = 1.0  # m, resample wardens landing on top of Bob


@dataclass(frozen=True)
class SweepRecord:
    scheme: str
    sweep_variable: str
    sweep_value: float
    trial: int
    covert_rate: float  # bits/s/Hz
    p_opt: float  # W
    seed: int


def trial_seed(master_seed: int, trial: int) -> int:
    """Independent per-trial seed so parallel and serial runs agree."""
    ss = np.random.SeedSequence([int(master_seed), int(trial)])
    return int(ss.generate_state(1, np.uint64)[0])


def sample_scenarios(config: ExperimentConfig, n: int | None = None,
                     seed: int | None = None) -> list[Scenario]:
    """Bob and the nominal warden center drawn uniformly over the ground region."""
    n = config.trials if n is None else n
    if n < 1:
        raise ValueError("need at least one scenario")
    rng = np.random.default_rng(config.seed if seed is None else seed)
    template = config.scenario("mwmp")
    x_hi = config.waveguide_length_m
    out = []
    for _ in range(n):
        bob = np.array([rng.uniform(0.0, x_hi),
                        rng.uniform(-_SCENARIO_Y_HALFWIDTH, _SCENARIO_Y_HALFWIDTH), 0.0])
        while True:
            willie = np.array([rng.uniform(0.0, x_hi),
                               rng.uniform(-_SCENARIO_Y_HALFWIDTH, _SCENARIO_Y_HALFWIDTH), 0.0])
            if np.hypot(*(willie[:2] - bob[:2])) >= _MIN_SEPARATION:
                break
        out.append(dataclasses.replace(
            template, r_b=bob,
            willie=WillieUncertainty(willie, config.delta_r_m)))
    return out


def _apply_sweep_value(sc: Scenario, variable: str, value: float) -> Scenario:
    if variable == "target_error_rate":
        return dataclasses.replace(sc, covertness=CovertnessSpec(1.0 - value))
    if variable == "power_budget":
        from .constants import dbm_to_watts

        return dataclasses.replace(sc, p_max=dbm_to_watts(value))
    if variable == "uncertainty_radius":
        return dataclasses.replace(sc, willie=WillieUncertainty(sc.willie.center, value))
    raise ValueError(f"unknown sweep variable {variable!r}; valid variables: "
                     + ", ".join(SWEEP_VARIABLES))


def solve_scheme(scheme: str, sc: Scenario, config: ExperimentConfig,
                 seed: int) -> tuple[float, float]:
    """(covert rate, transmit power) of one scheme on one scenario."""
    if scheme == "swsp":
        swsp_sc = dataclasses.replace(sc, geom=config.geometry_swsp())
        # fixed absolute resolution: under a budget sweep the candidate power
        # grids stay nested, so the rate is exactly monotone in the budget
        sol = swsp.solve(swsp_sc, config.delta_p())
        return sol.rate, sol.p_opt
    if scheme == "mwmp":
        sol = mwmp.solve(sc, config.pso_params(seed), k=config.willie_samples_k)
        return sol.rate, sol.power
    if scheme in (k.value for k in benchmarks.BenchmarkKind):
        res = benchmarks.evaluate(benchmarks.BenchmarkKind(scheme), sc,
                                  k=config.willie_samples_k)
        return res.rate, res.power
    raise ValueError(f"unknown scheme {scheme!r}; valid schemes: " + ", ".join(SCHEMES))


def run_sweep(config: ExperimentConfig, variable: str, values,
              schemes=SCHEMES) -> list[SweepRecord]:
    """Solve every (value, scheme, Monte-Carlo trial) combination.

    The same seeded scenario set and the same per-trial solver seeds are reused
    at every sweep value, so curves differ only through the swept parameter.
    """
    if variable not in SWEEP_VARIABLES:
        raise ValueError(f"unknown sweep variable {variable!r}; valid variables: "
                         + ", ".join(SWEEP_VARIABLES))
    schemes = tuple(schemes)
    for s in schemes:
        if s not in SCHEMES:
            raise ValueError(f"unknown scheme {s!r}; valid schemes: " + ", ".join(SCHEMES))
    scenarios = sample_scenarios(config)
    records = []
    for value in values:
        for scheme in schemes:
            for trial, base in enumerate(scenarios):
                sc = _apply_sweep_value(base, variable, float(value))
                seed = trial_seed(config.seed, trial)
                rate, power = solve_scheme(scheme, sc, config, seed)
                records.append(SweepRecord(scheme, variable, float(value), trial,
                                           rate, power, seed))
    return records


def mean_rates(records) -> dict[tuple[str, float], float]:
    """Mean covert rate per (scheme, sweep value); means ignore the trial axis."""
    sums: dict[tuple[str, float], list[float]] = {}
    for r in records:
        sums.setdefault((r.scheme, r.sweep_value), []).append(r.covert_rate)
    return {key: float(np.mean(v)) for key, v in sums.items()}


def run_convergence(config: ExperimentConfig, case: str) -> list[SweepRecord]:
    """Best-so-far traces: per power step (swsp) or per optimizer iteration (mwmp).

    Rows carry trial = -1 because they are means over the configured number of
    random initializations (the swsp search is deterministic, so one run).
    """
    if case == "swsp":
        sc = config.scenario("swsp")
        trace = swsp.rate_trace(sc, config.converge_delta_p())
        powers = config.converge_delta_p() * np.arange(1, trace.size + 1)
        return [SweepRecord("swsp", "iteration", float(i + 1), -1, float(trace[i]),
                            float(powers[i]), config.seed)
                for i in range(trace.size)]
    if case == "mwmp":
        sc = config.scenario("mwmp")
        traces = []
        for i in range(config.converge_inits):
            params = config.pso_params(trial_seed(config.seed, i))
            traces.append(mwmp.solve(sc, params, k=config.willie_samples_k).trace)
        mean = np.mean(np.stack(traces), axis=0)
        return [SweepRecord("mwmp", "iteration", float(t + 1), -1, float(mean[t]),
                            0.0, config.seed)
                for t in range(mean.size)]
    raise ValueError(f"unknown convergence case {case!r}; valid cases: swsp, mwmp")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def emit(records, path, fmt: str = "csv") -> None:
    """Write sweep records; floats carry 17 significant digits so a parse
    round-trips bit-exactly."""
    if fmt == "csv":
        text = records_to_csv(records)
    elif fmt == "json":
        text = records_to_json(records)
    else:
        raise ValueError(f"unknown output format {fmt!r}; valid formats: csv, json")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def records_to_csv(records) -> str:
    lines = [",".join(CSV_HEADER)]
    for r in records:
        lines.append(",".join([r.scheme, r.sweep_variable, _fmt(r.sweep_value),
                               str(r.trial), _fmt(r.covert_rate), _fmt(r.p_opt),
                               str(r.seed)]))
    return "\n".join(lines) + "\n"


def records_to_json(records) -> str:
    rows = []
    for r in records:
        rows.append('{"scheme": "%s", "sweep_variable": "%s", "sweep_value": %s, '
                    '"trial": %d, "covert_rate_bps_hz": %s, "p_opt_watts": %s, '
                    '"seed": %d}'
                    % (r.scheme, r.sweep_variable, _fmt(r.sweep_value), r.trial,
                       _fmt(r.covert_rate), _fmt(r.p_opt), r.seed))
    return "[\n" + ",\n".join(rows) + "\n]\n" if rows else "[]\n"


def read_records(path, fmt: str = "csv") -> list[SweepRecord]:
    """Parse a file previously produced by :func:`emit`."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "csv":
        lines = [ln for ln in text.splitlines() if ln]
        if lines[0] != ",".join(CSV_HEADER):
            raise ValueError(f"unexpected CSV header in {path}")
        out = []
        for ln in lines[1:]:
            parts = ln.split(",")
            out.append(SweepRecord(parts[0], parts[1], float(parts[2]), int(parts[3]),
                                   float(parts[4]), float(parts[5]), int(parts[6])))
        return out
    if fmt == "json":
        import json

        rows = json.loads(text)
        return [SweepRecord(r["scheme"], r["sweep_variable"], float(r["sweep_value"]),
                            int(r["trial"]), float(r["covert_rate_bps_hz"]),
                            float(r["p_opt_watts"]), int(r["seed"])) for r in rows]
    raise ValueError(f"unknown input format {fmt!r}; valid formats: csv, json")
