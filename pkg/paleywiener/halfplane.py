# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Upper Half-Plane Tools

Poisson integrals of boundary log-modulus data, the majorant inequality
log|g(z)| ≤ P[log|g|](z) for bounded analytic g, exponential-type estimation
along the imaginary axis, and truncated Poisson integrals of −θ showing how
divergent envelopes drive the majorant to −∞.

Boundary grids are uniform. A −∞ sample marks a simple zero of g on a node;
its quadrature weight uses the corrected trapezoid value φ(t₀) + log(h/2π)
for the logarithmic singularity, with the smooth part φ estimated from the
neighbouring nodes.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import integrate

from paleywiener.envelopes import DEFAULT_T_MAX, DEFAULT_WINDOWS, ThetaEnvelope, Verdict, decide_tail
from paleywiener.exceptions import (
    DegenerateData,
    InsufficientCoverage,
    InvalidBoundaryData,
    NotAdmissible,
    PaleyWienerValidationError,
)
from paleywiener.logger import log_action, log_debug

COVERAGE_TOL = 1e-8
ZERO_TOL = 1e-9
ADMISSIBILITY_SLACK = 1e-12
MAJORANT_TOL = 1e-6


@dataclass(frozen=True)
class BoundaryLogData:
    """log|g(t)| on a uniform grid, with an optional tail model a·log|t| + b."""

    t_grid: np.ndarray
    log_modulus: np.ndarray
    tail_model: tuple[float, float] | None = None

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        u = np.asarray(self.log_modulus, dtype=float)
        if t.ndim != 1 or t.shape != u.shape or t.size < 3:
            raise InvalidBoundaryData("t_grid and log_modulus must be matching 1-D arrays of length ≥ 3")
        steps = np.diff(t)
        if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
            raise InvalidBoundaryData("t_grid must be uniform and increasing")
        if np.any(np.isnan(u)) or np.any(u == np.inf):
            raise InvalidBoundaryData("log_modulus must be finite or −∞")
        singular = np.isneginf(u)
        if np.any(singular[1:] & singular[:-1]):
            raise InvalidBoundaryData(
                "−∞ samples must be isolated", details={"first": float(t[np.flatnonzero(singular[1:] & singular[:-1])[0]])}
            )
        if singular[0] or singular[-1]:
            raise InvalidBoundaryData("−∞ samples are not allowed at the grid ends")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "log_modulus", u)

    @property
    def spacing(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0])

    @classmethod
    def from_function(
        cls, g: Callable[[np.ndarray], Any], t_grid, tail_model: tuple[float, float] | None = None
    ) -> BoundaryLogData:
        """Sample log|g| on the real axis; |g| ≤ 1e-9 counts as a zero."""
        t = np.asarray(t_grid, dtype=float)
        modulus = np.abs(np.broadcast_to(np.asarray(g(t.astype(complex))), t.shape))
        with np.errstate(divide="ignore"):
            u = np.where(modulus > ZERO_TOL, np.log(np.where(modulus > 0, modulus, 1.0)), -np.inf)
        return cls(t, u, tail_model)

    @classmethod
    def constant(cls, value: float, t_grid) -> BoundaryLogData:
        t = np.asarray(t_grid, dtype=float)
        return cls(t, np.full(t.shape, float(value)), (0.0, float(value)))


@dataclass(frozen=True)
class TypeEstimate:
    slope: float
    log_coefficient: float
    intercept: float
    r_grid: np.ndarray
    residual: float

    def summary(self) -> dict[str, Any]:
        return {"slope": self.slope, "log_coefficient": self.log_coefficient, "residual": self.residual}


@dataclass(frozen=True)
class MajorantPoint:
    x: float
    y: float
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict[str, float]:
        return {"x": self.x, "y": self.y, "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin}


@dataclass(frozen=True)
class MajorantReport:
    points: tuple[MajorantPoint, ...]
    tolerance: float = MAJORANT_TOL

    @property
    def min_margin(self) -> float:
        return min(p.margin for p in self.points) if self.points else math.inf

    @property
    def holds(self) -> bool:
        return self.min_margin >= -self.tolerance

    def summary(self) -> dict[str, Any]:
        return {"points": len(self.points), "min_margin": self.min_margin, "holds": self.holds}

    def rows(self) -> list[list[float]]:
        return [[p.x, p.y, p.lhs, p.rhs, p.margin] for p in self.points]


def poisson_kernel(x: float, y: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return y / (math.pi * (y * y + (x - t) ** 2))


def kernel_mass_outside(lo: float, hi: float, x: float, y: float) -> float:
    """Mass of the Poisson kernel at x + iy outside [lo, hi]."""
    return (math.pi - math.atan((hi - x) / y) + math.atan((lo - x) / y)) / math.pi


def _trapezoid_weights(n: int, h: float) -> np.ndarray:
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return w


def _regularized(b: BoundaryLogData) -> np.ndarray:
    """Replace −∞ samples by φ(t₀) + log(h/2π).

    φ(t₀) is extrapolated from φ(t₀ ± h) and, where both are finite samples,
    φ(t₀ ± 2h).
    """
    u = b.log_modulus.copy()
    zeros = np.flatnonzero(np.isneginf(u))
    if zeros.size == 0:
        return u
    h = b.spacing
    near = 0.5 * (u[zeros - 1] + u[zeros + 1]) - math.log(h)
    smooth = near.copy()
    inner = (zeros >= 2) & (zeros <= u.size - 3)
    idx = zeros[inner]
    far = 0.5 * (u[idx - 2] + u[idx + 2]) - math.log(2.0 * h)
    usable = np.isfinite(far)
    smooth[np.flatnonzero(inner)[usable]] = (4.0 * near[inner][usable] - far[usable]) / 3.0
    u[zeros] = smooth + math.log(h / (2.0 * math.pi))
    return u


def _tail_integral(model: tuple[float, float], x: float, y: float, lo: float, hi: float) -> float:
    a, b = model

    def integrand(t: float) -> float:
        return float(poisson_kernel(x, y, t)) * (a * math.log(abs(t)) + b)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        left, _ = integrate.quad(integrand, -math.inf, lo, epsabs=1e-13, epsrel=1e-12, limit=400)
        right, _ = integrate.quad(integrand, hi, math.inf, epsabs=1e-13, epsrel=1e-12, limit=400)
    return left + right


def poisson_integral(b: BoundaryLogData, x: float, y: float) -> float:
    """(1/π) ∫ y·log|g(t)| / (y² + (x−t)²) dt."""
    if not y > 0:
        raise PaleyWienerValidationError("Interior points need y > 0", field="y")
    t = b.t_grid
    lo, hi = float(t[0]), float(t[-1])
    weights = _trapezoid_weights(t.size, b.spacing)
    inside = float(np.sum(weights * poisson_kernel(x, y, t) * _regularized(b)))
    if b.tail_model is not None:
        return inside + _tail_integral(b.tail_model, x, y, lo, hi)
    outside = kernel_mass_outside(lo, hi, x, y)
    if outside > COVERAGE_TOL:
        raise InsufficientCoverage(
            "Boundary grid misses kernel mass and no tail model was given",
            details={"x": x, "y": y, "missing_mass": outside, "grid": [lo, hi]},
        )
    return inside


def poisson_kernel_mass(b: BoundaryLogData, x: float, y: float) -> float:
    """Kernel mass seen by :func:`poisson_integral`: grid trapezoid plus exact tails."""
    ones = BoundaryLogData(b.t_grid, np.ones_like(b.t_grid), (0.0, 1.0))
    return poisson_integral(ones, x, y)


def _require_bounded(g: Callable[[np.ndarray], Any], b: BoundaryLogData, y_axis: np.ndarray) -> None:
    on_real = float(np.max(b.log_modulus))
    on_imag = float(np.max(np.abs(np.asarray(g(1j * y_axis)))))
    if on_real > math.log1p(ADMISSIBILITY_SLACK) or on_imag > 1.0 + ADMISSIBILITY_SLACK:
        raise NotAdmissible(
            "Function is not bounded by 1 on the axes",
            details={"max_log_modulus_real": on_real, "max_modulus_imaginary": on_imag},
        )


@log_action("Log majorant check")
def log_majorant_check(
    g: Callable[[np.ndarray], Any],
    boundary: BoundaryLogData,
    points,
    tolerance: float = MAJORANT_TOL,
) -> MajorantReport:
    """Compare log|g(z)| with the Poisson integral of its boundary log-modulus."""
    points = np.asarray(points, dtype=complex).reshape(-1)
    _require_bounded(g, boundary, np.linspace(0.0, 50.0, 201))
    report = []
    for z in points:
        lhs_value = abs(complex(np.asarray(g(np.array([z])))[0]))
        lhs = math.log(lhs_value) if lhs_value > 0 else -math.inf
        rhs = poisson_integral(boundary, float(z.real), float(z.imag))
        report.append(MajorantPoint(float(z.real), float(z.imag), lhs, rhs))
    result = MajorantReport(tuple(report), tolerance)
    log_debug("Majorant check", result.summary())
    return result


def estimate_exponential_type(g: Callable[[np.ndarray], Any], r_grid) -> TypeEstimate:
    """Fit log|g(ir)| ≈ A·r + c·log r + d over the top decade of r_grid."""
    r = np.asarray(r_grid, dtype=float)
    r = r[r > 0]
    if r.size == 0:
        raise DegenerateData("r_grid has no positive values")
    top = r[r >= r.max() / 10.0]
    modulus = np.abs(np.asarray(g(1j * top)))
    keep = modulus > 0
    if np.count_nonzero(keep) < 3:
        raise DegenerateData("Function vanishes on the sampling grid", details={"points": int(top.size)})
    rr = top[keep]
    design = np.stack([rr, np.log(rr), np.ones_like(rr)], axis=1)
    target = np.log(modulus[keep])
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.max(np.abs(design @ coef - target)))
    return TypeEstimate(float(coef[0]), float(coef[1]), float(coef[2]), rr, residual)


@dataclass(frozen=True)
class TruncatedPoissonProfile:
    truncations: np.ndarray
    values: np.ndarray
    increments: np.ndarray
    monotone: bool
    verdict: Verdict

    def summary(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "monotone": self.monotone,
            "last_value": float(self.values[-1]),
            "truncation": float(self.truncations[-1]),
        }

    def rows(self) -> list[list[float]]:
        return [[T, v] for T, v in zip(self.truncations.tolist(), self.values.tolist())]


@log_action("Truncated Poisson profile")
def truncated_poisson_profile(
    theta: ThetaEnvelope,
    x: float = 0.0,
    y: float = 1.0,
    t_max: float = DEFAULT_T_MAX,
    windows: int = DEFAULT_WINDOWS,
) -> TruncatedPoissonProfile:
    """Poisson integral of −θ(|t|) over |t| ≤ T at geometric truncations T ∈ [1, t_max].

    A divergent envelope makes the sequence decrease without bound; the verdict
    uses the same window rule as the log-integral classifier on the increments.
    """
    if not y > 0:
        raise PaleyWienerValidationError("Interior points need y > 0", field="y")
    edges = np.geomspace(1.0, t_max, windows + 1)

    def integrand(t: float) -> float:
        return float(theta.sample(abs(t))) * float(poisson_kernel(x, y, t))

    def piece(a: float, b: float) -> float:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            value, _ = integrate.quad(integrand, a, b, epsabs=1e-12, epsrel=1e-12, limit=200)
        return value

    head = piece(-1.0, 1.0)
    increments = np.array(
        [piece(float(a), float(b)) + piece(-float(b), -float(a)) for a, b in zip(edges[:-1], edges[1:])]
    )
    values = -(head + np.concatenate([[0.0], np.cumsum(increments)]))
    monotone = bool(np.all(np.diff(values) <= 1e-15))
    verdict, _, _ = decide_tail(increments)
    return TruncatedPoissonProfile(edges, values, -increments, monotone, verdict)
