# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Experiment runner for paleywiener

Each subcommand builds its inputs from an ExperimentConfig, runs one pipeline
and writes ``<command>.json`` (plus ``<command>.csv`` for curves) into the
output directory.

Exit codes: 0 when every check passes, 2 when a certificate fails or the
construction is refused, 1 on any other error.
"""

import argparse
import math
import sys
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from paleywiener import __version__
from paleywiener.battery import (
    envelope_battery,
    modulated_sinc,
    motion_profile_from_recipe,
    profile_from_recipe,
    radial_gaussian_sum,
    sample,
    sinc_boundary,
    smooth_battery,
)
from paleywiener.constructor import construct_radial, verify_envelope
from paleywiener.envelopes import LogIntegralVerdict, log_integral_1d, log_integral_radial, parse_envelope
from paleywiener.euclid import Grid, SampledFunction, slice_projection_residual, unit_directions
from paleywiener.exceptions import ConfigError, ConstructionError, NotAdmissible, PaleyWienerError
from paleywiener.halfplane import log_majorant_check, truncated_poisson_profile
from paleywiener.motion_group import (
    MotionGroupFunction,
    RepresentationPoint,
    group_fourier,
    hs_decay_profile,
    plancherel_consistency,
)
from paleywiener.schrodinger import (
    motion_propagate,
    quadratic_phase_identity,
    uniqueness_experiment_mn,
    uniqueness_experiment_rn,
)
from paleywiener.utils.config import COMMANDS, ExperimentConfig, Settings, load_config
from paleywiener.utils.fingerprint import generate_key, result_cache
from paleywiener.utils.logging import CorrelationContext, configure, get_logger, log_context
from paleywiener.utils.metrics import get_metrics_summary, metrics, record_certificate, record_experiment
from paleywiener.utils.serialization import load_json, write_artifact, write_json

EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_FAILED = 2

DEFAULT_EUCLID_INPUT = {"kind": "bump", "radius": 1.0, "power": 6}
DEFAULT_MOTION_INPUT = {"kind": "bump", "radius": 1.0, "power": 4}
UNITARITY_TOL = 1e-6
SLICE_LAMBDAS = np.linspace(0.0, 10.0, 41)
# Gaussians need a wider box than the unit-support bumps.
SLICE_BATTERY_GRIDS = {"gaussian": (8.0, 128)}

logger = get_logger("paleywiener.cli")


@dataclass
class Outcome:
    """Result of one subcommand before it is written to disk"""

    passed: bool
    report: dict[str, Any]
    columns: Sequence[str] | None = None
    rows: list[list[Any]] | None = None


# =========================================================================
# Inputs
# =========================================================================


def _read_recipe(config: ExperimentConfig, default: dict[str, Any]) -> dict[str, Any]:
    if config.input is None:
        return default
    recipe = load_json(config.input)
    if not isinstance(recipe, dict):
        raise ConfigError("Input recipe must be a JSON object", field="input")
    return recipe


def euclid_input(config: ExperimentConfig) -> SampledFunction:
    profile = profile_from_recipe(_read_recipe(config, DEFAULT_EUCLID_INPUT))
    return sample(profile, Grid(config.dim, config.half_width, config.n))


def motion_input(config: ExperimentConfig) -> MotionGroupFunction:
    func, radius = motion_profile_from_recipe(_read_recipe(config, DEFAULT_MOTION_INPUT))
    grid = Grid(2, config.half_width, config.n)
    return MotionGroupFunction.from_callable(func, grid, config.angles, radius)


def classify_cached(spec: str, t_max: float, windows: int) -> LogIntegralVerdict:
    """1-D verdict of a named envelope, shared across subcommands of one process"""

    def run(spec: str, t_max: float, windows: int) -> LogIntegralVerdict:
        return log_integral_1d(parse_envelope(spec), t_max, windows)

    verdict, _ = result_cache.get_or_execute("log_integral_1d", run, spec=spec, t_max=t_max, windows=windows)
    return verdict


def _evidence_rows(verdict: LogIntegralVerdict) -> list[list[Any]]:
    edges = verdict.edges
    return [
        [lo, hi, w, e] for lo, hi, w, e in zip(edges[:-1], edges[1:], verdict.windows, verdict.evidence)
    ]


# =========================================================================
# Subcommands
# =========================================================================


def run_classify(config: ExperimentConfig) -> Outcome:
    if config.battery:
        rows, entries = [], []
        for spec, expected in envelope_battery():
            flat = classify_cached(spec, config.t_max, config.windows)
            radial = log_integral_radial(parse_envelope(spec), config.dim, config.t_max, config.windows)
            match = flat.verdict is expected and radial.verdict is expected
            entries.append(
                {
                    "theta": spec,
                    "expected": expected.value,
                    "verdict": flat.verdict.value,
                    "radial_verdict": radial.verdict.value,
                    "value": flat.value,
                    "match": match,
                }
            )
            rows.append([spec, expected.value, flat.verdict.value, radial.verdict.value])
        matches = sum(1 for e in entries if e["match"])
        report = {"battery": entries, "matches": matches, "total": len(entries), "dim": config.dim}
        return Outcome(matches == len(entries), report, ["theta", "expected", "verdict", "radial_verdict"], rows)

    flat = classify_cached(config.theta, config.t_max, config.windows)
    radial = log_integral_radial(parse_envelope(config.theta), config.dim, config.t_max, config.windows)
    report = {
        "theta": config.theta,
        **flat.to_dict(),
        "radial": {"dim": config.dim, **radial.summary()},
    }
    return Outcome(True, report, ["t_lo", "t_hi", "window_integral", "cumulative"], _evidence_rows(flat))


def run_construct(config: ExperimentConfig) -> Outcome:
    theta = parse_envelope(config.theta)
    verdict = classify_cached(config.theta, config.t_max, config.windows)
    construction = construct_radial(theta, config.dim, config.support_budget, y_max=config.y_max, verdict=verdict)
    record_certificate(construction.certified)
    certificate = construction.certificate
    rows = [[y, r] for y, r in zip(certificate.y_grid.tolist(), certificate.residuals.tolist())]
    report = {"theta": config.theta, "verdict": verdict.verdict.value, **construction.to_dict()}
    return Outcome(construction.certified, report, ["y", "residual"], rows)


def _slice_battery(config: ExperimentConfig) -> list[tuple[str, SampledFunction, float]]:
    if config.input is not None:
        return [("input", euclid_input(config), config.tolerance)]
    cases = []
    for name, profile in smooth_battery().items():
        half_width, points = SLICE_BATTERY_GRIDS.get(name, (config.half_width, config.n))
        cases.append((name, sample(profile, Grid(2, half_width, points)), config.tolerance))
    return cases


def run_slice_check(config: ExperimentConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    entries, rows = [], []
    for name, f, tolerance in _slice_battery(config):
        directions = unit_directions(f.dim, config.directions, rng if f.dim == 3 else None)
        residuals = [slice_projection_residual(f, omega, SLICE_LAMBDAS) for omega in directions]
        worst = float(max(residuals))
        entries.append({"input": name, "max_residual": worst, "tolerance": tolerance, "passed": worst < tolerance})
        rows.extend([name, k, res] for k, res in enumerate(residuals))
    report = {"cases": entries, "directions": config.directions, "lambda_max": float(SLICE_LAMBDAS[-1])}
    return Outcome(all(e["passed"] for e in entries), report, ["input", "direction", "residual"], rows)


def _majorant_battery() -> list[tuple[str, Callable[[np.ndarray], np.ndarray], float]]:
    return [("sinc_b1", modulated_sinc(1.0, 1.0), 1.0), ("sinc_b2", modulated_sinc(1.0, 2.0), 1.0)]


def run_poisson_check(config: ExperimentConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    points = rng.uniform(-5.0, 5.0, size=20) + 1j * rng.uniform(0.2, 3.0, size=20)
    entries, rows = [], []
    for name, g, a in _majorant_battery():
        checked = log_majorant_check(g, sinc_boundary(a), points)
        entries.append({"function": name, **checked.summary()})
        rows.extend([name, *row] for row in checked.rows())
    profile = truncated_poisson_profile(parse_envelope(config.theta), t_max=config.t_max, windows=config.windows)
    verdict = classify_cached(config.theta, config.t_max, config.windows)
    consistent = profile.verdict is verdict.verdict
    report = {
        "majorant": entries,
        "truncated_poisson": {**profile.summary(), "theta": config.theta, "log_integral_verdict": verdict.verdict.value},
        "consistent": consistent,
    }
    passed = all(e["holds"] for e in entries) and consistent
    return Outcome(passed, report, ["function", "x", "y", "lhs", "rhs", "margin"], rows)


def run_mn_transform(config: ExperimentConfig) -> Outcome:
    f = motion_input(config)
    matrix = group_fourier(f, RepresentationPoint(config.r), config.band)
    columns, rows = matrix.records()
    return Outcome(True, {**matrix.header(), "support": matrix.support()}, columns, rows)


def run_mn_decay(config: ExperimentConfig) -> Outcome:
    f = motion_input(config)
    r_grid = np.linspace(config.r_max / config.points, config.r_max, config.points)
    profile = hs_decay_profile(f, r_grid, config.band)
    r = np.array([p[0] for p in profile])
    hs = np.array([p[1] for p in profile])
    certificate = verify_envelope((r, hs), parse_envelope(config.theta), y_max=config.r_max)
    record_certificate(certificate.passed)
    verdict = classify_cached(config.theta, config.t_max, config.windows)
    report = {"theta": config.theta, "verdict": verdict.verdict.value, "certificate": certificate.to_dict()}
    return Outcome(certificate.passed, report, ["r", "hs_norm"], [[a, b] for a, b in zip(r.tolist(), hs.tolist())])


def run_schrodinger_rn(config: ExperimentConfig) -> Outcome:
    f = euclid_input(config)
    identity = quadratic_phase_identity(f, config.t0)
    experiment = uniqueness_experiment_rn(f, config.t0, parse_envelope(config.theta))
    report = {"identity": identity.summary(), "uniqueness": experiment.summary()}
    passed = identity.discrepancy < config.tolerance and experiment.consistent
    return Outcome(passed, report, ["r", "sup_modulus", "residual"], experiment.rows())


def run_schrodinger_mn(config: ExperimentConfig) -> Outcome:
    f = motion_input(config)
    evolved = motion_propagate(f, config.t0)
    experiment = uniqueness_experiment_mn(f, config.t0, parse_envelope(config.theta))
    drift = evolved.norm_drift()
    report = {"evolution": {**evolved.header(), "norm_drift": drift}, "uniqueness": experiment.summary()}
    passed = drift < UNITARITY_TOL and experiment.mode_bound_holds and experiment.consistent
    return Outcome(passed, report, ["mode", "r", "sup_modulus", "residual"], experiment.rows())


def run_plancherel(config: ExperimentConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    grid = Grid(2, config.half_width, config.n)
    functions = [
        MotionGroupFunction.bi_invariant(radial_gaussian_sum(rng), grid, config.angles) for _ in range(config.samples)
    ]
    result = plancherel_consistency(functions, config.band, config.r_max, config.points, config.tolerance)
    report = {**result.summary(), "expected_constant": 1.0 / (2.0 * math.pi)}
    return Outcome(result.passed, report, ["norm_squared", "hs_integral", "ratio"], result.rows())


HANDLERS: dict[str, Callable[[ExperimentConfig], Outcome]] = {
    "classify": run_classify,
    "construct": run_construct,
    "slice-check": run_slice_check,
    "poisson-check": run_poisson_check,
    "mn-transform": run_mn_transform,
    "mn-decay": run_mn_decay,
    "schrodinger-rn": run_schrodinger_rn,
    "schrodinger-mn": run_schrodinger_mn,
    "plancherel": run_plancherel,
}


# =========================================================================
# Runner
# =========================================================================


def run(config: ExperimentConfig) -> int:
    """Run one experiment and write its artifacts; returns the exit code."""
    params = config.fingerprint_params()
    fingerprint = generate_key(config.command, **params)
    header = {"command": config.command, "fingerprint": fingerprint, "version": __version__, "config": params}
    stem = config.command
    failure = f"{config.output_dir}/{stem}.json"
    tags = {"command": config.command}
    with log_context(command=config.command, fingerprint=fingerprint), metrics.timer("experiment", tags):
        try:
            outcome = HANDLERS[config.command](config)
        except (ConstructionError, NotAdmissible) as e:
            write_json(failure, {**header, "passed": False, **e.to_dict()})
            logger.experiment_event(config.command, "refused", exit_code=EXIT_FAILED, fingerprint=fingerprint)
            return EXIT_FAILED
        except PaleyWienerError as e:
            write_json(failure, {**header, "passed": False, **e.to_dict()})
            logger.experiment_event(
                config.command, "errored", exit_code=EXIT_ERROR, fingerprint=fingerprint, error=str(e)
            )
            return EXIT_ERROR
        except (OSError, ValueError) as e:
            write_json(failure, {**header, "passed": False, "error": type(e).__name__, "message": str(e)})
            logger.experiment_event(
                config.command, "errored", exit_code=EXIT_ERROR, fingerprint=fingerprint, error=str(e)
            )
            return EXIT_ERROR

    exit_code = EXIT_PASS if outcome.passed else EXIT_FAILED
    report = {**header, "passed": outcome.passed, **outcome.report}
    written = write_artifact(config.output_dir, stem, report, outcome.columns, outcome.rows)
    logger.experiment_event(
        config.command,
        "passed" if outcome.passed else "failed",
        exit_code=exit_code,
        fingerprint=fingerprint,
        artifacts=[str(p) for p in written.values()],
    )
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with experiment parameters")
    common.add_argument("--output-dir", dest="output_dir", help="Directory for JSON/CSV artifacts")
    common.add_argument("--seed", type=int, help="Seed for randomized batteries")
    common.add_argument("--theta", help="Envelope spec: zero, linear, sqrt, pow:a, powlog:a:b, table:<path>, ...")
    common.add_argument("--input", help="JSON input recipe")
    common.add_argument("--dim", type=int)
    common.add_argument("--n", type=int, help="Grid points per axis")
    common.add_argument("--half-width", dest="half_width", type=float)
    common.add_argument("--angles", type=int)
    common.add_argument("--band", type=int)
    common.add_argument("--r", type=float, help="Representation radius")
    common.add_argument("--r-max", dest="r_max", type=float)
    common.add_argument("--points", type=int)
    common.add_argument("--t0", type=float)
    common.add_argument("--y-max", dest="y_max", type=float)
    common.add_argument("--t-max", dest="t_max", type=float)
    common.add_argument("--windows", type=int)
    common.add_argument("--directions", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--support-budget", dest="support_budget", type=float)
    common.add_argument("--tolerance", type=float)

    parser = argparse.ArgumentParser(prog="paleywiener", description="Paley–Wiener experiments")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        child = sub.add_parser(command, parents=[common])
        if command == "classify":
            child.add_argument("--battery", action="store_true", default=None, help="Classify the envelope battery")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config")
    try:
        settings = Settings.from_env()
        configure(settings.log_level)
        config = load_config(command, config_path, args, settings)
    except ConfigError as e:
        line = e.details.get("line")
        location = f" (line {line}, column {e.details.get('column')})" if line else ""
        print(f"paleywiener: {e}{location}", file=sys.stderr)
        return EXIT_ERROR

    CorrelationContext.set_id(CorrelationContext._generate_id())
    start = time.perf_counter()
    exit_code = run(config)
    record_experiment(command, exit_code, (time.perf_counter() - start) * 1000)
    logger.info("Run summary", **get_metrics_summary(command))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
