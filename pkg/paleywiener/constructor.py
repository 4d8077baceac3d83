# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Paley–Wiener Constructor

Builds a non-zero compactly supported function whose transform obeys
|ĝ(y)| ≤ C e^{−θ(|y|)} for an envelope θ with convergent log-integral.

The function is a K-fold convolution of normalized box indicators of
[−a_k/2, a_k/2]; its transform is the product Π sin(a_k y/2)/(a_k y/2) and
its support radius is Σa_k/2. Widths follow a dyadic schedule
a_k ∝ θ(2^{k+1})/2^k made non-increasing and scaled into the support budget.
Every design is accepted only through an envelope certificate.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import signal

from paleywiener.envelopes import LogIntegralVerdict, ThetaEnvelope, Verdict, log_integral_1d
from paleywiener.euclid import (
    Grid,
    SampledFunction,
    fourier,
    mirror,
    radialize,
)
from paleywiener.exceptions import (
    AnnihilatedSymmetrization,
    BudgetExhausted,
    DivergentLogIntegral,
    GridTooCoarse,
    InconclusiveLogIntegral,
    PaleyWienerValidationError,
)
from paleywiener.logger import log_action, log_debug, log_experiment
from paleywiener.utils.metrics import record_certificate

DEFAULT_Y_MAX = 1e4
DEFAULT_K_MAX = 40
BISECTION_STEPS = 40
CERTIFICATE_SLACK = 1e-9
LOG_FLOOR = -1e308
ANNIHILATION_NORM = 1e-12


@dataclass(frozen=True)
class EnvelopeCertificate:
    y_grid: np.ndarray
    residuals: np.ndarray
    max_residual: float
    constant: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= CERTIFICATE_SLACK

    def summary(self) -> dict[str, Any]:
        return {"passed": self.passed, "max_residual": self.max_residual, "C": self.constant}

    def to_dict(self) -> dict[str, Any]:
        return {**self.summary(), "y_max": float(self.y_grid[-1]), "points": int(len(self.y_grid))}


@dataclass(frozen=True)
class SincProductDesign:
    """Widths a_1 ≥ … ≥ a_K > 0 of the box convolution."""

    widths: tuple[float, ...]
    fitted_C: float = 1.0
    beta: float | None = None
    certificate: EnvelopeCertificate | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        w = np.asarray(self.widths, dtype=float)
        if w.size == 0 or np.any(w <= 0) or np.any(np.diff(w) > 1e-15 * w[:-1]):
            raise PaleyWienerValidationError(
                "Widths must be positive and non-increasing", field="widths", errors=[str(self.widths)]
            )

    @property
    def K(self) -> int:
        return len(self.widths)

    @property
    def total_support(self) -> float:
        return float(sum(self.widths))

    @property
    def support_radius(self) -> float:
        return self.total_support / 2.0

    def transform(self, y) -> np.ndarray:
        """Π_k sin(a_k y/2)/(a_k y/2)."""
        y = np.asarray(y, dtype=float)
        out = np.ones_like(y)
        for a in self.widths:
            out = out * np.sinc(a * y / (2.0 * math.pi))
        return out

    def to_dict(self) -> dict[str, Any]:
        report: dict[str, Any] = {
            "widths": list(self.widths),
            "K": self.K,
            "C": self.fitted_C,
            "beta": self.beta,
            "total_support": self.total_support,
            "support_radius": self.support_radius,
        }
        if self.certificate is not None:
            report["certificate"] = self.certificate.to_dict()
        return report

    def summary(self) -> dict[str, Any]:
        return {"K": self.K, "total_support": self.total_support, "C": self.fitted_C}


def certificate_grid(y_max: float = DEFAULT_Y_MAX, points: int = 2000) -> np.ndarray:
    return np.concatenate([[0.0], np.geomspace(1e-3, y_max, points)])


def _log_modulus(values) -> np.ndarray:
    modulus = np.abs(np.asarray(values))
    with np.errstate(divide="ignore"):
        return np.where(modulus > 0, np.log(np.where(modulus > 0, modulus, 1.0)), LOG_FLOOR)


def verify_envelope(
    F: SincProductDesign | Callable[[np.ndarray], Any] | tuple[np.ndarray, np.ndarray],
    theta: ThetaEnvelope,
    y_max: float = DEFAULT_Y_MAX,
    constant: float | None = None,
    points: int = 2000,
) -> EnvelopeCertificate:
    """Residuals log|F(y)| + θ(y) − log C on a log-spaced grid over [0, y_max].

    ``F`` is an analytic design, a callable of y, or sampled ``(y, |F(y)|)``.
    C is fitted on y ≤ √y_max unless given.
    """
    if isinstance(F, tuple):
        y_grid, modulus = (np.asarray(a, dtype=float) for a in F)
        keep = (y_grid >= 0) & (y_grid <= y_max)
        y_grid, log_mod = y_grid[keep], _log_modulus(modulus[keep])
    else:
        y_grid = certificate_grid(y_max, points)
        values = F.transform(y_grid) if isinstance(F, SincProductDesign) else F(y_grid)
        log_mod = _log_modulus(values)

    score = log_mod + theta.sample(y_grid)
    if np.all(log_mod == LOG_FLOOR):
        return EnvelopeCertificate(y_grid, np.full(y_grid.shape, LOG_FLOOR), LOG_FLOOR, 0.0)
    if constant is None:
        window = y_grid <= math.sqrt(y_max)
        log_c = float(np.max(score[window] if window.any() else score))
    else:
        log_c = math.log(constant) if constant > 0 else -math.inf
    residuals = score - log_c
    max_residual = float(np.max(residuals))
    return EnvelopeCertificate(y_grid, residuals, max_residual, math.exp(log_c))


def _dyadic_weights(theta: ThetaEnvelope, k_max: int) -> np.ndarray:
    k = np.arange(k_max)
    raw = theta.sample(2.0 ** (k + 1)) / 2.0**k
    nonzero = np.flatnonzero(raw > 0)
    if nonzero.size == 0:
        return np.zeros(0)
    weights = raw[nonzero[0] :]
    return np.minimum.accumulate(weights)


def _design(weights: np.ndarray, beta: float) -> SincProductDesign:
    return SincProductDesign(tuple(float(a) for a in beta * weights), beta=beta)


def _certified(design: SincProductDesign, theta: ThetaEnvelope, y_max: float) -> SincProductDesign:
    cert = verify_envelope(design, theta, y_max)
    return SincProductDesign(design.widths, cert.constant, design.beta, cert)


def _require_convergent(theta: ThetaEnvelope, verdict: LogIntegralVerdict | None) -> LogIntegralVerdict:
    verdict = verdict or log_integral_1d(theta)
    if verdict.verdict is Verdict.DIVERGENT:
        raise DivergentLogIntegral(
            f"Envelope {theta.name} has a divergent log-integral; no compactly supported function can decay this fast",
            details={"envelope": theta.name, "verdict": verdict.summary()},
        )
    if verdict.verdict is Verdict.INCONCLUSIVE:
        raise InconclusiveLogIntegral(
            f"Envelope {theta.name} could not be classified",
            details={"envelope": theta.name, "verdict": verdict.summary()},
        )
    return verdict


@log_action("Design widths")
def design_widths(
    theta: ThetaEnvelope,
    support_budget: float,
    k_max: int = DEFAULT_K_MAX,
    y_max: float = DEFAULT_Y_MAX,
    verdict: LogIntegralVerdict | None = None,
) -> SincProductDesign:
    """Smallest-support certified design with at most ``k_max`` factors."""
    if support_budget <= 0:
        raise PaleyWienerValidationError("Support budget must be positive", field="support_budget")
    theta.require_monotone()
    _require_convergent(theta, verdict)

    weights = _dyadic_weights(theta, k_max)
    if weights.size == 0:
        design = _certified(SincProductDesign((float(support_budget),), beta=None), theta, y_max)
        record_certificate(design.certificate.passed)
        if not design.certificate.passed:
            raise BudgetExhausted("Single-box design failed its certificate", details=design.to_dict())
        return design

    chosen: np.ndarray | None = None
    beta_max = 0.0
    for K in range(1, weights.size + 1):
        beta_max = support_budget / float(np.sum(weights[:K]))
        design = _certified(_design(weights[:K], beta_max), theta, y_max)
        record_certificate(design.certificate.passed)
        if design.certificate.passed:
            chosen = weights[:K]
            break
    if chosen is None:
        raise BudgetExhausted(
            f"No design with K ≤ {k_max} fits the support budget {support_budget:g}",
            details={"envelope": theta.name, "support_budget": support_budget, "k_max": k_max},
        )

    lo, hi = 0.0, beta_max
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if verify_envelope(_design(chosen, mid), theta, y_max).passed:
            hi = mid
        else:
            lo = mid
    design = _certified(_design(chosen, hi), theta, y_max)
    log_debug("Design certified", {"envelope": theta.name, **design.summary()})
    return design


def _box_samples(width: float, grid: Grid) -> np.ndarray:
    """Normalized indicator of [−width/2, width/2] averaged over each grid cell.

    The samples sum to 1/h, so a box narrower than one cell becomes a
    discrete delta.
    """
    x = grid.axis()
    h = grid.spacing
    overlap = np.minimum(x + h / 2, width / 2) - np.maximum(x - h / 2, -width / 2)
    return np.clip(overlap, 0.0, None) / (width * h)


@log_action("Realize time domain")
def realize_time_domain(design: SincProductDesign, grid: Grid) -> SampledFunction:
    """K-fold convolution of the design's normalized boxes, sampled on a 1-D grid."""
    if grid.dim != 1:
        raise PaleyWienerValidationError("Realization needs a 1-D grid", field="grid.dim")
    if grid.half_width < design.support_radius:
        raise GridTooCoarse(
            "Grid half-width is smaller than the design's support radius",
            details={"half_width": grid.half_width, "support_radius": design.support_radius},
        )
    n = grid.points
    centre = n // 2
    values = _box_samples(design.widths[0], grid)
    for width in design.widths[1:]:
        # full convolution index k sits at x = −2L + k·h
        full = signal.fftconvolve(values, _box_samples(width, grid))
        values = grid.spacing * full[centre : centre + n]
    values = np.where(np.abs(grid.axis()) > design.support_radius, 0.0, values).astype(complex)
    return SampledFunction(grid, values, design.support_radius)


@log_action("Symmetrize")
def symmetrize_and_shift(g1: SampledFunction, shift: float = 0.0) -> SampledFunction:
    """Even part (g₁(x) + g₁(−x))/2, retried on translates of g₁ if it vanishes."""
    if g1.dim != 1:
        raise PaleyWienerValidationError("Symmetrization needs a 1-D function", field="g1.dim")
    candidates = [0.0] + ([k * shift for k in (1, 2, 3)] if shift else [])
    for s in candidates:
        source = g1 if s == 0 else g1.translated([s])
        if s and source.support_radius > g1.grid.half_width:
            break
        values = 0.5 * (source.values + mirror(source.values))
        g = SampledFunction(g1.grid, values, source.support_radius)
        if g.l2_norm() >= ANNIHILATION_NORM:
            if s:
                log_debug("Symmetrization used a shift", {"shift": s})
            return g
    raise AnnihilatedSymmetrization(
        "Symmetrization vanished for every candidate shift", details={"shifts": candidates}
    )


@dataclass(frozen=True)
class RadialConstruction:
    function: SampledFunction
    design: SincProductDesign
    certificate: EnvelopeCertificate
    spectrum_mismatch: float
    dim: int

    @property
    def certified(self) -> bool:
        return self.certificate.passed

    def summary(self) -> dict[str, Any]:
        return {"dim": self.dim, "certified": self.certified, **self.design.summary()}

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "certified": self.certified,
            "design": self.design.to_dict(),
            "certificate": self.certificate.to_dict(),
            "spectrum_mismatch": self.spectrum_mismatch,
            "support_radius": self.function.support_radius,
            "grid": self.function.grid.to_dict(),
        }


def _working_grids(design: SincProductDesign, dim: int, points: int | None) -> tuple[Grid, Grid]:
    half_width = max(1.25 * design.support_radius, design.support_radius + 0.25)
    profile_grid = Grid(1, half_width, 8192)
    target = Grid(dim, half_width, points or {1: 1024, 2: 128, 3: 48}[dim])
    return profile_grid, target


@log_experiment("Construct radial")
def construct_radial(
    theta: ThetaEnvelope,
    dim: int,
    support_budget: float,
    y_max: float = DEFAULT_Y_MAX,
    k_max: int = DEFAULT_K_MAX,
    points: int | None = None,
    verdict: LogIntegralVerdict | None = None,
) -> RadialConstruction:
    """Certified radial function on ℝⁿ with |f̂(y)| ≤ C e^{−θ(‖y‖)}."""
    if dim not in (1, 2, 3):
        raise PaleyWienerValidationError("Dimension must be 1, 2 or 3", field="dim")
    design = design_widths(theta, support_budget, k_max=k_max, y_max=y_max, verdict=verdict)
    profile_grid, target = _working_grids(design, dim, points)
    g = symmetrize_and_shift(realize_time_domain(design, profile_grid))
    f = g if dim == 1 else radialize(g, dim, target)

    certificate = verify_envelope(design, theta, y_max)
    record_certificate(certificate.passed)
    spectrum = fourier(f)
    mismatch = float(np.max(np.abs(spectrum.values - design.transform(f.grid.frequency_radii()))))
    return RadialConstruction(f, design, certificate, mismatch, dim)
