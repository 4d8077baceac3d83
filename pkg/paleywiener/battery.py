# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Named test inputs: smooth bumps, Gaussians, indicators, the envelope battery
and JSON input recipes used by the CLI fixtures.

Every builder returns a vectorized callable on points of shape (..., dim)
together with its support radius.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from typing import Any

import numpy as np

from paleywiener.envelopes import Verdict
from paleywiener.euclid import Grid, SampledFunction
from paleywiener.exceptions import ConfigError
from paleywiener.halfplane import BoundaryLogData

# e^{-36.841} < 1e-16
GAUSSIAN_CUTOFF = 36.841

Profile = tuple[Callable[[np.ndarray], np.ndarray], float]


def _norm(x) -> np.ndarray:
    return np.linalg.norm(np.asarray(x, dtype=float), axis=-1)


def bump(radius: float = 1.0, power: int = 4, center=None) -> Profile:
    """(1 − ‖x − c‖²/R²)^power inside the ball, zero outside."""
    c = None if center is None else np.asarray(center, dtype=float)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        s = _norm(x if c is None else x - c) ** 2 / radius**2
        return np.where(s < 1.0, np.clip(1.0 - s, 0.0, None) ** power, 0.0)

    offset = 0.0 if c is None else float(np.linalg.norm(c))
    return evaluate, radius + offset


def gaussian(alpha: float = 0.5, center=None) -> Profile:
    """e^{−α‖x − c‖²}, numerically supported where it exceeds 1e-16."""
    c = None if center is None else np.asarray(center, dtype=float)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-alpha * _norm(x if c is None else x - c) ** 2)

    offset = 0.0 if c is None else float(np.linalg.norm(c))
    return evaluate, math.sqrt(GAUSSIAN_CUTOFF / alpha) + offset


def ball_indicator(radius: float = 1.0) -> Profile:
    def evaluate(x):
        return np.where(_norm(x) <= radius, 1.0, 0.0)

    return evaluate, radius


def interval_indicator(half_length: float = 1.0) -> Profile:
    """Indicator of [−a, a] with half weight at the endpoints."""

    def evaluate(x):
        t = np.abs(np.asarray(x, dtype=float)[..., 0])
        edge = np.isclose(t, half_length, rtol=0.0, atol=1e-12)
        return np.where(edge, 0.5, np.where(t < half_length, 1.0, 0.0))

    return evaluate, half_length


def random_gaussian_sum(
    rng: np.random.Generator, dim: int = 2, terms: int = 3, spread: float = 1.0, min_width: float = 0.4
) -> Profile:
    """Sum of Gaussians with random centers, widths ≥ min_width and weights."""
    centers = rng.uniform(-spread, spread, size=(terms, dim))
    widths = rng.uniform(min_width, 2.0 * min_width, size=terms)
    weights = rng.normal(size=terms)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1])
        for c, w, a in zip(centers, widths, weights):
            out = out + a * np.exp(-(_norm(x - c) ** 2) / (2.0 * w * w))
        return out

    radius = float(np.max(np.linalg.norm(centers, axis=1) + widths * math.sqrt(2.0 * GAUSSIAN_CUTOFF)))
    return evaluate, radius


def radial_gaussian_sum(
    rng: np.random.Generator, terms: int = 3, alpha_range: tuple[float, float] = (1.5, 3.0)
) -> Profile:
    """Σ c_k e^{−α_k‖x‖²}: radial, so bi-invariant on the motion group."""
    alphas = rng.uniform(*alpha_range, size=terms)
    weights = rng.uniform(0.5, 1.5, size=terms)

    def evaluate(x):
        s = _norm(x) ** 2
        return sum(c * np.exp(-a * s) for c, a in zip(weights, alphas))

    return evaluate, math.sqrt(GAUSSIAN_CUTOFF / float(alphas.min()))


def sample(profile: Profile, grid: Grid) -> SampledFunction:
    func, radius = profile
    return SampledFunction.from_callable(func, grid, radius)


def smooth_battery() -> dict[str, Profile]:
    """Gaussian and three smooth bumps used for slice-projection checks."""
    return {
        "gaussian": gaussian(1.0),
        "bump_unit": bump(1.0, 4),
        "bump_wide": bump(1.5, 6),
        "bump_shifted": bump(0.8, 4, center=(0.3, -0.2)),
    }


def envelope_battery() -> list[tuple[str, Verdict]]:
    """Eight envelopes with their known verdicts."""
    return [
        ("zero", Verdict.CONVERGENT),
        ("sqrt", Verdict.CONVERGENT),
        ("powlog:0.9:2", Verdict.CONVERGENT),
        ("log2damped", Verdict.CONVERGENT),
        ("linear", Verdict.DIVERGENT),
        ("logdamped", Verdict.DIVERGENT),
        ("pow:1.1", Verdict.DIVERGENT),
        ("pow:2", Verdict.DIVERGENT),
    ]


def entire_sinc(z) -> np.ndarray:
    """sin(z)/z on complex arguments."""
    z = np.asarray(z, dtype=complex)
    safe = np.where(z == 0, 1.0, z)
    return np.where(z == 0, 1.0 + 0j, np.sin(safe) / safe)


def modulated_sinc(a: float = 1.0, b: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """e^{ibz}·sinc(az); bounded by 1 in the upper half-plane when b ≥ a."""

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * b * z) * entire_sinc(a * z)

    return evaluate


def box_transform(a: float = 1.0) -> Callable[[np.ndarray], np.ndarray]:
    """Fourier transform 2·sin(az)/z of the indicator of [−a, a]."""

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return 2.0 * a * entire_sinc(a * z)

    return evaluate


def sinc_boundary(a: float = 1.0, nodes_per_zero: int = 512, half_periods: int = 256) -> BoundaryLogData:
    """Boundary log-modulus of sinc(at) with zeros on grid nodes.

    The grid ends half a period short of a zero, where the averaged tail
    −log|t| − log 2 − log a takes over.
    """
    h = math.pi / (nodes_per_zero * a)
    last = nodes_per_zero * half_periods - nodes_per_zero // 2
    t = h * np.arange(-last, last + 1)
    return BoundaryLogData.from_function(lambda s: entire_sinc(a * s), t, (-1.0, -math.log(2.0) - math.log(a)))


_BUILDERS: dict[str, Callable[..., Profile]] = {
    "bump": bump,
    "gaussian": gaussian,
    "ball": ball_indicator,
    "interval": interval_indicator,
}


def profile_from_recipe(recipe: dict[str, Any]) -> Profile:
    """Build a spatial profile from ``{"kind": ..., **params}`` or ``{"sum": [...]}``.

    Sums take ``{"weight": w, ...}`` items and the largest member radius.
    """
    if "sum" in recipe:
        parts = [(complex(item.get("weight", 1.0)), profile_from_recipe(item)) for item in recipe["sum"]]
        if not parts:
            return (lambda x: np.zeros(np.shape(x)[:-1])), 0.0

        def evaluate(x):
            return sum(w * np.asarray(p[0](x), dtype=complex) for w, p in parts)

        return evaluate, max(p[1] for _, p in parts)
    kind = recipe.get("kind")
    if kind == "zero":
        return (lambda x: np.zeros(np.shape(x)[:-1])), 0.0
    if kind not in _BUILDERS:
        raise ConfigError(f"Unknown input kind {kind!r}", field="input.kind")
    params = {k: v for k, v in recipe.items() if k not in ("kind", "weight", "mode")}
    try:
        return _BUILDERS[kind](**params)
    except TypeError as e:
        raise ConfigError(f"Bad parameters for input kind {kind!r}: {e}", field="input")


MotionProfile = tuple[Callable[[np.ndarray, float], np.ndarray], float]


def motion_profile_from_recipe(recipe: dict[str, Any]) -> MotionProfile:
    """f(x, β) = Σ w·p(x)·e^{imβ} over the items of a recipe.

    Each item is a spatial recipe with optional ``weight`` and ``mode``; a
    recipe without ``sum`` is a single item, mode 0 by default.
    """
    items = recipe["sum"] if "sum" in recipe else [recipe]
    parts = [(complex(item.get("weight", 1.0)), int(item.get("mode", 0)), profile_from_recipe(item)) for item in items]
    radius = max((p[1] for _, _, p in parts), default=0.0)

    def evaluate(x, beta):
        out = np.zeros(np.shape(x)[:-1], dtype=complex)
        for w, m, (func, _) in parts:
            out = out + w * np.exp(1j * m * beta) * np.asarray(func(x), dtype=complex)
        return out

    return evaluate, radius
