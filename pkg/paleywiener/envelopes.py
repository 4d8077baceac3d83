# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Decay Envelopes and Log-Integral Criteria

A decay envelope θ is a non-negative, locally integrable profile on [0, ∞).
A compactly supported non-zero function can have |f̂(y)| ≤ C e^{-θ(|y|)} if
and only if ∫ θ(t)/(1+t²) dt is finite; this module decides that integral
numerically, in one dimension and in the radial n-dimensional form
surface(Sⁿ⁻¹) · ∫₁^∞ θ(r)/r² dr.

No quadrature can prove divergence. The classifier works on geometric
(dyadic by default) windows:

- Divergent when each of the last four window integrals exceeds 1e-3.
- Convergent when the geometric extrapolation of the tail from the last two
  windows agrees with the extrapolation from the two windows before them to
  within 1e-6. The reported value includes the extrapolated tail.
- Inconclusive otherwise.

Envelopes may carry a tail class t^p / log^q(e+t). When present it decides
the verdict (the fast path) and the numerics provide value and evidence.
"""

from __future__ import annotations

import csv
import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from scipy import integrate, special

from paleywiener.exceptions import (
    EnvelopeSpecError,
    NegativeEnvelope,
    NonFiniteSample,
    NotMonotone,
)
from paleywiener.logger import log_action, log_debug
from paleywiener.utils.validators import validate_log_integral_args

EPS_DIV = 1e-3
EPS_CONV = 1e-6
QUAD_TOL = 1e-9
DEFAULT_T_MAX = 2.0**20
DEFAULT_WINDOWS = 20


class Verdict(str, Enum):
    CONVERGENT = "Convergent"
    DIVERGENT = "Divergent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class TailClass:
    """Asymptotic class θ(t) ~ c · t^exponent / log^log_power(e+t)."""

    exponent: float
    log_power: float = 0.0

    def verdict(self) -> Verdict:
        if self.exponent < 1:
            return Verdict.CONVERGENT
        if self.exponent == 1 and self.log_power > 1:
            return Verdict.CONVERGENT
        return Verdict.DIVERGENT

    def profile(self, t):
        t = np.asarray(t, dtype=float)
        return t**self.exponent / np.log(np.e + t) ** self.log_power

    def tail_integral(self, theta_at_start: float, start: float) -> float:
        """∫_start^∞ θ(t)/t² dt for θ matched to this class at ``start``."""
        if self.verdict() is Verdict.DIVERGENT:
            return math.inf
        if theta_at_start == 0:
            return 0.0
        scale = theta_at_start / float(self.profile(start))

        # t = e^s keeps the integrand smooth and the range semi-infinite
        def integrand(s):
            return math.exp(s * (self.exponent - 1)) / math.log(math.e + math.exp(min(s, 700.0))) ** self.log_power

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            value, _ = integrate.quad(integrand, math.log(start), math.inf, limit=400)
        return scale * value


@dataclass(frozen=True)
class ThetaEnvelope:
    """A decay profile θ with its metadata.

    ``evaluate`` must accept numpy arrays and return an array of the same shape.
    """

    evaluate: Callable[[np.ndarray], Any]
    monotone_nondecreasing: bool = True
    tail_class: TailClass | None = None
    name: str = "custom"

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        values = np.broadcast_to(np.asarray(self.evaluate(t_arr), dtype=float), t_arr.shape)
        if values.ndim == 0:
            return float(values)
        return np.array(values)

    def sample(self, t):
        """Evaluate θ and enforce non-negativity and finiteness."""
        values = np.asarray(self(t), dtype=float)
        bad = ~np.isfinite(values)
        if bad.any():
            where = float(np.asarray(t, dtype=float).reshape(-1)[np.flatnonzero(bad.reshape(-1))[0]])
            raise NonFiniteSample(
                f"Envelope {self.name} returned a non-finite value",
                details={"envelope": self.name, "t": where},
            )
        negative = values < 0
        if negative.any():
            index = np.flatnonzero(negative.reshape(-1))[0]
            raise NegativeEnvelope(
                f"Envelope {self.name} is negative",
                details={
                    "envelope": self.name,
                    "t": float(np.asarray(t, dtype=float).reshape(-1)[index]),
                    "value": float(values.reshape(-1)[index]),
                },
            )
        return values if values.ndim else float(values)

    def scaled(self, factor: float) -> ThetaEnvelope:
        """factor · θ; keeps the tail class unless factor is 0."""
        if factor < 0:
            raise EnvelopeSpecError("Scale factor must be non-negative", details={"factor": factor})
        inner = self.evaluate
        return replace(
            self,
            evaluate=lambda t: factor * np.asarray(inner(t), dtype=float),
            tail_class=self.tail_class if factor > 0 else None,
            name=f"{factor:g}*{self.name}",
        )

    def is_zero(self, t_max: float = DEFAULT_T_MAX) -> bool:
        nodes = np.concatenate([[0.0], np.geomspace(1e-6, t_max, 257)])
        return bool(np.all(self.sample(nodes) == 0))

    def check_monotone(self, rng: np.random.Generator | None = None, pairs: int = 256, t_max: float = DEFAULT_T_MAX) -> bool:
        """Spot-check θ(t₁) ≤ θ(t₂) for random t₁ ≤ t₂ on a log scale."""
        rng = rng or np.random.default_rng(0)
        t = np.exp(rng.uniform(math.log(1e-6), math.log(t_max), size=(pairs, 2)))
        t.sort(axis=1)
        lo, hi = self.sample(t[:, 0]), self.sample(t[:, 1])
        return bool(np.all(lo <= hi + 1e-12 * (1.0 + np.abs(hi))))

    def require_monotone(self) -> None:
        if not self.monotone_nondecreasing:
            raise NotMonotone(f"Envelope {self.name} is not flagged non-decreasing", details={"envelope": self.name})
        if not self.check_monotone():
            raise NotMonotone(f"Envelope {self.name} failed the monotonicity spot check", details={"envelope": self.name})


@dataclass(frozen=True)
class LogIntegralVerdict:
    verdict: Verdict
    value: float
    evidence: tuple[float, ...]
    windows: tuple[float, ...]
    edges: tuple[float, ...]
    tail_estimate: float
    tail_uncertainty: float
    method: str = "numeric"

    @property
    def is_convergent(self) -> bool:
        return self.verdict is Verdict.CONVERGENT

    @property
    def is_divergent(self) -> bool:
        return self.verdict is Verdict.DIVERGENT

    def summary(self) -> dict[str, Any]:
        return {"verdict": self.verdict.value, "value": self.value, "method": self.method}

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "value": self.value if math.isfinite(self.value) else None,
            "method": self.method,
            "tail_estimate": self.tail_estimate if math.isfinite(self.tail_estimate) else None,
            "tail_uncertainty": self.tail_uncertainty if math.isfinite(self.tail_uncertainty) else None,
            "edges": list(self.edges),
            "windows": list(self.windows),
            "evidence": list(self.evidence),
        }


def sphere_surface(dim: int) -> float:
    """Surface area of the unit sphere Sⁿ⁻¹ in ℝⁿ."""
    return 2.0 * math.pi ** (dim / 2.0) / float(special.gamma(dim / 2.0))


def _geometric_edges(start: float, t_max: float, windows: int) -> np.ndarray:
    return start * (t_max / start) ** (np.arange(windows + 1) / windows)


def _window_integrals(integrand: Callable[[float], float], edges: np.ndarray) -> np.ndarray:
    out = np.empty(len(edges) - 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for k in range(len(edges) - 1):
            value, _ = integrate.quad(integrand, edges[k], edges[k + 1], epsabs=QUAD_TOL, epsrel=1e-12, limit=200)
            out[k] = value
    return out


def decide_tail(tail_windows: np.ndarray) -> tuple[Verdict, float, float]:
    """Verdict, extrapolated tail and tail uncertainty from the geometric windows."""
    if np.all(tail_windows[-4:] > EPS_DIV):
        return Verdict.DIVERGENT, math.inf, math.inf
    p3, p2, p1 = (float(v) for v in tail_windows[-3:])
    if p1 == 0.0 and p2 == 0.0:
        return Verdict.CONVERGENT, 0.0, 0.0
    if p2 <= 0.0 or p3 <= 0.0:
        return Verdict.INCONCLUSIVE, math.nan, math.inf
    q1, q0 = p1 / p2, p2 / p3
    if q1 >= 1.0 or q0 >= 1.0:
        return Verdict.INCONCLUSIVE, math.nan, math.inf
    tail = p1 * q1 / (1.0 - q1)
    previous = p2 * q0 / (1.0 - q0) - p1
    uncertainty = abs(tail - previous)
    if uncertainty < EPS_CONV:
        return Verdict.CONVERGENT, tail, uncertainty
    return Verdict.INCONCLUSIVE, tail, uncertainty


def _classify(
    theta: ThetaEnvelope,
    integrand: Callable[[float], float],
    head_edges: list[float],
    t_max: float,
    windows: int,
    scale: float,
) -> LogIntegralVerdict:
    nodes = np.concatenate([[0.0], np.geomspace(1e-6, t_max, 513)])
    theta.sample(nodes)

    tail_edges = _geometric_edges(1.0, t_max, windows)
    edges = np.concatenate([head_edges, tail_edges]) if head_edges else tail_edges
    parts = _window_integrals(integrand, edges)
    tail_windows = parts[len(head_edges) :] if head_edges else parts

    verdict, tail, uncertainty = decide_tail(tail_windows)
    method = "numeric"
    if theta.tail_class is not None:
        class_verdict = theta.tail_class.verdict()
        if class_verdict is Verdict.CONVERGENT and verdict is not Verdict.CONVERGENT:
            tail = theta.tail_class.tail_integral(float(theta.sample(t_max)), t_max)
            uncertainty = math.nan
        elif class_verdict is Verdict.DIVERGENT:
            tail, uncertainty = math.inf, math.inf
        verdict = class_verdict
        method = "tail_class"

    evidence = np.cumsum(parts) * scale
    if verdict is Verdict.CONVERGENT:
        value = (float(np.sum(parts)) + tail) * scale
    elif verdict is Verdict.DIVERGENT:
        value = math.inf
    else:
        # lower bound only
        value = float(evidence[-1])

    log_debug(
        "Log-integral classified",
        {"envelope": theta.name, "verdict": verdict.value, "value": value, "method": method},
    )
    return LogIntegralVerdict(
        verdict=verdict,
        value=value,
        evidence=tuple(float(v) for v in evidence),
        windows=tuple(float(v) * scale for v in parts),
        edges=tuple(float(v) for v in edges),
        tail_estimate=tail * scale if math.isfinite(tail) else tail,
        tail_uncertainty=uncertainty,
        method=method,
    )


@log_action("Log-integral 1-D")
def log_integral_1d(
    theta: ThetaEnvelope, t_max: float = DEFAULT_T_MAX, windows: int = DEFAULT_WINDOWS
) -> LogIntegralVerdict:
    """Classify ∫₀^∞ θ(t)/(1+t²) dt."""
    validate_log_integral_args(t_max, windows).raise_if_invalid()

    def integrand(t: float) -> float:
        return float(theta.sample(t)) / (1.0 + t * t)

    return _classify(theta, integrand, [0.0], t_max, windows, scale=1.0)


@log_action("Log-integral radial")
def log_integral_radial(
    theta: ThetaEnvelope, dim: int, t_max: float = DEFAULT_T_MAX, windows: int = DEFAULT_WINDOWS
) -> LogIntegralVerdict:
    """Classify ∫_{‖y‖≥1} θ(‖y‖)/‖y‖^{n+1} dy = surface(Sⁿ⁻¹) ∫₁^∞ θ(r)/r² dr."""
    validate_log_integral_args(t_max, windows).raise_if_invalid()
    if not isinstance(dim, int) or dim < 1:
        raise EnvelopeSpecError("Dimension must be a positive integer", details={"dim": dim})

    def integrand(r: float) -> float:
        return float(theta.sample(r)) / (r * r)

    return _classify(theta, integrand, [], t_max, windows, scale=sphere_surface(dim))


# Built-in envelopes


def zero_envelope() -> ThetaEnvelope:
    return ThetaEnvelope(np.zeros_like, True, None, "zero")


def linear_envelope() -> ThetaEnvelope:
    return ThetaEnvelope(lambda t: t, True, None, "linear")


def sqrt_envelope() -> ThetaEnvelope:
    return ThetaEnvelope(np.sqrt, True, None, "sqrt")


def power_envelope(exponent: float) -> ThetaEnvelope:
    if exponent < 0:
        raise EnvelopeSpecError("Power exponent must be non-negative", details={"exponent": exponent})
    return ThetaEnvelope(lambda t: t**exponent, True, TailClass(exponent, 0.0), f"pow:{exponent:g}")


def power_log_envelope(exponent: float, log_power: float) -> ThetaEnvelope:
    """θ(t) = t^exponent / log^log_power(e + t)."""
    tail = TailClass(exponent, log_power)
    nodes = np.concatenate([[0.0], np.geomspace(1e-6, DEFAULT_T_MAX, 2049)])
    monotone = bool(np.all(np.diff(tail.profile(nodes)) >= 0))
    return ThetaEnvelope(tail.profile, monotone, tail, f"powlog:{exponent:g}:{log_power:g}")


def table_envelope(path: str | Path) -> ThetaEnvelope:
    """CSV of (t, θ) rows; linear interpolation, last slope continued beyond the table."""
    path = Path(path)
    if not path.is_file():
        raise EnvelopeSpecError(f"Envelope table not found: {path}", details={"path": str(path)})
    rows: list[tuple[float, float]] = []
    with path.open(newline="") as handle:
        for record in csv.reader(handle):
            if len(record) < 2 or record[0].lstrip().startswith("#"):
                continue
            try:
                rows.append((float(record[0]), float(record[1])))
            except ValueError:
                continue  # header
    if len(rows) < 2:
        raise EnvelopeSpecError("Envelope table needs at least two rows", details={"path": str(path)})
    data = np.array(sorted(rows))
    t_tab, v_tab = data[:, 0], data[:, 1]
    slope = (v_tab[-1] - v_tab[-2]) / (t_tab[-1] - t_tab[-2])

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        inside = np.interp(t, t_tab, v_tab)
        return np.where(t > t_tab[-1], v_tab[-1] + slope * (t - t_tab[-1]), inside)

    if slope > 0:
        tail = TailClass(1.0, 0.0)
    elif slope == 0:
        tail = TailClass(0.0, 0.0)
    else:
        tail = None
    monotone = bool(np.all(np.diff(v_tab) >= 0) and slope >= 0)
    return ThetaEnvelope(evaluate, monotone, tail, f"table:{path.name}")


_NAMED: dict[str, Callable[[], ThetaEnvelope]] = {
    "zero": zero_envelope,
    "linear": linear_envelope,
    "sqrt": sqrt_envelope,
    "log2damped": lambda: replace(power_log_envelope(1.0, 2.0), name="log2damped"),
    "logdamped": lambda: replace(power_log_envelope(1.0, 1.0), name="logdamped"),
}


def parse_envelope(spec: str) -> ThetaEnvelope:
    """Parse the envelope mini-language.

    ``zero``, ``linear``, ``sqrt``, ``log2damped`` (t/log²(e+t)), ``logdamped``
    (t/log(e+t)), ``pow:a``, ``powlog:a:b`` (t^a/log^b(e+t)), ``table:<path>``.
    """
    spec = (spec or "").strip()
    if spec in _NAMED:
        return _NAMED[spec]()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "pow" and rest:
            return power_envelope(float(rest))
        if kind == "powlog" and rest:
            exponent, _, log_power = rest.partition(":")
            return power_log_envelope(float(exponent), float(log_power))
    except ValueError:
        raise EnvelopeSpecError(f"Bad numeric parameter in envelope spec {spec!r}", details={"spec": spec})
    if kind == "table" and rest:
        return table_envelope(rest)
    raise EnvelopeSpecError(f"Unknown envelope spec {spec!r}", details={"spec": spec})
