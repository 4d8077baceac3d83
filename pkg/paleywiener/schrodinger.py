# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Free Schrödinger Evolution

u_t = iΔu on ℝⁿ, and e^{itΔ_G} on M(2) with Δ_G = Δ_{ℝ²} + ∂²/∂β².

Two propagators on ℝⁿ are kept apart:

- the spectral route multiplies the lattice transform by e^{−it‖ξ‖²};
- the kernel route sums the fundamental solution
  (4πit)^{−n/2} ∫ e^{i‖x−y‖²/4t} f(y) dy directly at arbitrary points.

On M(2) each angular mode f_m evolves independently under
e^{−itm²}·e^{itΔ_{ℝ²}}.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from paleywiener.constructor import CERTIFICATE_SLACK, EnvelopeCertificate, verify_envelope
from paleywiener.envelopes import ThetaEnvelope, Verdict, log_integral_radial
from paleywiener.euclid import Grid, SampledFunction, fourier, fourier_at, inverse_fourier
from paleywiener.exceptions import GridTooCoarse, PaleyWienerValidationError
from paleywiener.logger import log_action, log_debug, log_experiment
from paleywiener.motion_group import MotionElement as _Element
from paleywiener.motion_group import MotionGroupFunction

BAND_TOL = 1e-10
DISPERSION_FACTOR = 4.0
MODE_BOUND_SLACK = 1e-12

State = SampledFunction | MotionGroupFunction


@dataclass(frozen=True)
class EvolvedState:
    base: State
    t: float
    state: State
    route: str = "spectral"

    def l2_norm(self) -> float:
        return self.state.l2_norm()

    def norm_drift(self) -> float:
        """Relative change of the L² norm."""
        start = self.base.l2_norm()
        return 0.0 if start == 0 else abs(self.l2_norm() - start) / start

    def header(self) -> dict[str, Any]:
        inner = self.state.header() if isinstance(self.state, SampledFunction) else self.state.summary()
        return {**inner, "t": self.t, "route": self.route}


def effective_band(f: SampledFunction, tol: float = BAND_TOL) -> float:
    """Largest lattice frequency radius where |f̂| exceeds ``tol``·max|f̂|."""
    spectrum = fourier(f)
    modulus = np.abs(spectrum.values)
    peak = float(modulus.max(initial=0.0))
    if peak == 0:
        return 0.0
    return float(np.max(f.grid.frequency_radii()[modulus > tol * peak]))


def effective_radius(f: SampledFunction, tol: float = BAND_TOL) -> float:
    """Largest node radius where |f| exceeds ``tol``·max|f|, capped by the declared support."""
    modulus = np.abs(f.values)
    peak = float(modulus.max(initial=0.0))
    if peak == 0:
        return 0.0
    return min(f.support_radius, float(np.max(f.grid.radii()[modulus > tol * peak])))


def _require_room(f: SampledFunction, t: float) -> None:
    needed = effective_radius(f) + DISPERSION_FACTOR * math.sqrt(abs(t) * effective_band(f))
    if needed > f.grid.half_width:
        raise GridTooCoarse(
            "Grid box too small for the dispersion at this time",
            details={"t": t, "needed_half_width": needed, "half_width": f.grid.half_width},
        )


def _spectral(f: SampledFunction, t: float) -> SampledFunction:
    spectrum = fourier(f)
    radii = f.grid.frequency_radii()
    evolved = type(spectrum)(spectrum.grid, spectrum.values * np.exp(-1j * t * radii**2))
    return inverse_fourier(evolved)


def _kernel_prefactor(t: float, dim: int) -> complex:
    return complex(cmath.sqrt(4j * math.pi * t) ** (-dim))


def fundamental_solution(f: SampledFunction, t: float, points) -> np.ndarray:
    """(4πit)^{−n/2} h^n Σ_y e^{i‖x−y‖²/4t} f(y) at ``points`` of shape (..., n)."""
    if t == 0:
        return f.evaluate(points)
    points = np.asarray(points, dtype=float)
    chirp = np.exp(1j * f.grid.radii() ** 2 / (4.0 * t))
    g = SampledFunction(f.grid, f.values * chirp, f.support_radius)
    outer = np.exp(1j * np.sum(points**2, axis=-1) / (4.0 * t))
    return _kernel_prefactor(t, f.dim) * outer * fourier_at(g, points / (2.0 * t))


@log_action("Free propagation")
def free_propagate(f: SampledFunction, t: float, route: str = "spectral") -> EvolvedState:
    """e^{itΔ}f on the grid of ``f``."""
    if route not in ("spectral", "kernel"):
        raise PaleyWienerValidationError(f"Unknown route {route!r}", field="route")
    if t == 0:
        return EvolvedState(f, 0.0, f, route)
    if route == "spectral":
        _require_room(f, t)
        return EvolvedState(f, float(t), _spectral(f, t), route)
    values = fundamental_solution(f, t, f.grid.mesh())
    return EvolvedState(f, float(t), SampledFunction(f.grid, values, f.grid.half_width), route)


def chirped_transform(f: SampledFunction, t0: float, points) -> np.ndarray:
    """(4π|t0|)^{−n/2} |ĝ(x/2t0)| with g = e^{i‖y‖²/4t0} f."""
    chirp = np.exp(1j * f.grid.radii() ** 2 / (4.0 * t0))
    g = SampledFunction(f.grid, f.values * chirp, f.support_radius)
    points = np.asarray(points, dtype=float)
    return np.abs(fourier_at(g, points / (2.0 * t0))) / (4.0 * math.pi * abs(t0)) ** (f.dim / 2.0)


@dataclass(frozen=True)
class QuadraticPhaseReport:
    t0: float
    points: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    tolerance: float = 1e-6

    @property
    def discrepancy(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs), initial=0.0))

    @property
    def passed(self) -> bool:
        return self.discrepancy < self.tolerance

    def summary(self) -> dict[str, Any]:
        return {"t0": self.t0, "points": len(self.lhs), "discrepancy": self.discrepancy, "passed": self.passed}

    def rows(self) -> list[list[float]]:
        coords = self.points.reshape(len(self.lhs), -1)
        return [[*c, a, b] for c, a, b in zip(coords.tolist(), self.lhs.tolist(), self.rhs.tolist())]


@log_action("Quadratic phase identity")
def quadratic_phase_identity(f: SampledFunction, t0: float, x_max: float | None = None) -> QuadraticPhaseReport:
    """|u(x, t0)| from the spectral propagator against the chirped transform, at nodes ‖x‖ ≤ x_max."""
    if t0 == 0:
        raise PaleyWienerValidationError("t0 must be non-zero", field="t0")
    x_max = f.grid.half_width / 8.0 if x_max is None else x_max
    evolved = free_propagate(f, t0).state
    inside = f.grid.radii() <= x_max
    points = f.grid.mesh()[inside]
    lhs = np.abs(evolved.values[inside])
    rhs = chirped_transform(f, t0, points)
    return QuadraticPhaseReport(float(t0), points, lhs, rhs)


def _ray_directions(dim: int, count: int) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        phi = 2.0 * math.pi * np.arange(count) / count
        return np.stack([np.cos(phi), np.sin(phi)], axis=1)
    v = np.random.default_rng(0).normal(size=(count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass(frozen=True)
class UniquenessReport:
    theta: str
    verdict: Verdict
    t0: float
    radii: np.ndarray
    profile: np.ndarray
    certificate: EnvelopeCertificate
    f_norm: float
    mode: int | None = None

    @property
    def envelope_holds(self) -> bool:
        return self.certificate.passed

    @property
    def fitted_C(self) -> float:
        return self.certificate.constant

    @property
    def violation_radius(self) -> float | None:
        over = np.flatnonzero(self.certificate.residuals > CERTIFICATE_SLACK)
        return None if over.size == 0 else float(self.certificate.y_grid[over[0]])

    @property
    def contradiction(self) -> bool:
        """Envelope held for a Divergent θ with non-zero data."""
        return self.envelope_holds and self.verdict is Verdict.DIVERGENT and self.f_norm > 0

    @property
    def consistent(self) -> bool:
        return not self.contradiction

    def summary(self) -> dict[str, Any]:
        out = {
            "theta": self.theta,
            "verdict": self.verdict.value,
            "t0": self.t0,
            "envelope_holds": self.envelope_holds,
            "fitted_C": self.fitted_C,
            "violation_radius": self.violation_radius,
            "consistent": self.consistent,
        }
        if self.mode is not None:
            out["mode"] = self.mode
        return out

    def rows(self) -> list[list[float]]:
        residuals = self.certificate.residuals
        return [[r, u, float(e)] for r, u, e in zip(self.radii.tolist(), self.profile.tolist(), residuals)]


def _radial_sup(f: SampledFunction, t0: float, directions: int) -> tuple[np.ndarray, np.ndarray]:
    """sup over directions of |u(r·d, t0)| at r = 2|t0|·ω for lattice frequencies ω ≥ 0."""
    omega = math.pi / f.grid.half_width * np.arange(f.grid.points // 2)
    radii = 2.0 * abs(t0) * omega
    rays = _ray_directions(f.dim, directions)
    points = radii[:, None, None] * rays[None, :, :]
    modulus = np.abs(fundamental_solution(f, t0, points))
    return radii, modulus.max(axis=1)


def _experiment(
    f: SampledFunction, t0: float, theta: ThetaEnvelope, verdict: Verdict, directions: int, mode: int | None = None
) -> UniquenessReport:
    radii, profile = _radial_sup(f, t0, directions)
    y_max = float(radii[-1]) if radii[-1] > 0 else 1.0
    certificate = verify_envelope((radii, profile), theta, y_max=y_max)
    return UniquenessReport(theta.name, verdict, float(t0), radii, profile, certificate, f.l2_norm(), mode)


@log_experiment("Uniqueness on R^n")
def uniqueness_experiment_rn(
    f: SampledFunction, t0: float, theta: ThetaEnvelope, directions: int = 64
) -> UniquenessReport:
    """Fit |u(x, t0)| ≤ C·e^{−θ(‖x‖)} and compare with the log-integral verdict of θ."""
    if t0 == 0:
        raise PaleyWienerValidationError("t0 must be non-zero", field="t0")
    verdict = log_integral_radial(theta, f.dim).verdict
    return _experiment(f, t0, theta, verdict, directions)


@dataclass(frozen=True)
class ModeSpectrum:
    """Angular Fourier modes f_m(x) of a function on M(2); the SO(2) Casimir acts by m²."""

    grid: Grid
    angles: int
    modes: np.ndarray
    coefficients: np.ndarray
    support_radius: float

    @property
    def casimir(self) -> np.ndarray:
        return self.modes.astype(float) ** 2

    def coefficient(self, m: int) -> SampledFunction:
        hits = np.flatnonzero(self.modes == m)
        if hits.size == 0:
            raise PaleyWienerValidationError(f"Mode {m} is not represented", field="m")
        return SampledFunction(self.grid, self.coefficients[hits[0]], self.support_radius)

    def spectrum(self, m: int):
        return fourier(self.coefficient(m))

    def active_modes(self, tol: float = 1e-14) -> list[int]:
        peak = float(np.max(np.abs(self.coefficients), initial=0.0))
        if peak == 0:
            return []
        norms = np.max(np.abs(self.coefficients), axis=(1, 2))
        return sorted(int(m) for m in self.modes[norms > tol * peak])


def peter_weyl_decompose(f: MotionGroupFunction) -> ModeSpectrum:
    return ModeSpectrum(f.grid, f.angles, f.mode_numbers.copy(), f.mode_cache.copy(), f.support_radius)


def resynthesize(spectrum: ModeSpectrum) -> MotionGroupFunction:
    values = np.fft.ifft(np.moveaxis(spectrum.coefficients, 0, -1) * spectrum.angles, axis=-1)
    return MotionGroupFunction(spectrum.grid, spectrum.angles, values, spectrum.support_radius)


@log_action("Motion-group propagation")
def motion_propagate(f: MotionGroupFunction, t: float) -> EvolvedState:
    """e^{itΔ_G}f: each mode gets e^{−itm²} and the free propagator on ℝ²."""
    if t == 0:
        return EvolvedState(f, 0.0, f)
    modes = peter_weyl_decompose(f)
    evolved = np.zeros_like(modes.coefficients)
    active = set(modes.active_modes())
    for k, m in enumerate(modes.modes.tolist()):
        if m not in active:
            continue
        coefficient = modes.coefficient(m)
        evolved[k] = np.exp(-1j * t * m * m) * free_propagate(coefficient, t).state.values
    spectrum = ModeSpectrum(f.grid, f.angles, modes.modes, evolved, f.grid.half_width)
    return EvolvedState(f, float(t), resynthesize(spectrum))


@dataclass(frozen=True)
class MotionUniquenessReport:
    t0: float
    verdict: Verdict
    modes: tuple[UniquenessReport, ...]
    mode_bound_holds: bool
    f_norm: float

    @property
    def envelope_holds(self) -> bool:
        return all(report.envelope_holds for report in self.modes)

    @property
    def contradiction(self) -> bool:
        return self.envelope_holds and self.verdict is Verdict.DIVERGENT and self.f_norm > 0

    @property
    def consistent(self) -> bool:
        return not self.contradiction

    def summary(self) -> dict[str, Any]:
        return {
            "t0": self.t0,
            "verdict": self.verdict.value,
            "envelope_holds": self.envelope_holds,
            "mode_bound_holds": self.mode_bound_holds,
            "consistent": self.consistent,
            "modes": [report.summary() for report in self.modes],
        }

    def rows(self) -> list[list[float]]:
        return [[report.mode, *row] for report in self.modes for row in report.rows()]


def _mode_bound(modes: ModeSpectrum, active: list[int], t0: float, points: np.ndarray) -> bool:
    """|u_m(x, t0)| ≤ max_β |u(x, β, t0)| at the sample points."""
    per_mode = {m: fundamental_solution(modes.coefficient(m), t0, points) * np.exp(-1j * t0 * m * m) for m in active}
    betas = 2.0 * math.pi * np.arange(modes.angles) / modes.angles
    full = sum(np.multiply.outer(u, np.exp(1j * m * betas)) for m, u in per_mode.items())
    ceiling = np.max(np.abs(full), axis=-1)
    return all(bool(np.all(np.abs(u) <= ceiling + MODE_BOUND_SLACK)) for u in per_mode.values())


@log_experiment("Uniqueness on M(2)")
def uniqueness_experiment_mn(
    f: MotionGroupFunction, t0: float, theta: ThetaEnvelope, directions: int = 64
) -> MotionUniquenessReport:
    """Evolve mode by mode, check the averaging bound and run the ℝ² experiment on every active mode."""
    if t0 == 0:
        raise PaleyWienerValidationError("t0 must be non-zero", field="t0")
    verdict = log_integral_radial(theta, 2).verdict
    modes = peter_weyl_decompose(f)
    active = modes.active_modes()
    reports = tuple(_experiment(modes.coefficient(m), t0, theta, verdict, directions, mode=m) for m in active)
    if active:
        sample = f.grid.mesh()[f.grid.radii() <= f.grid.half_width][:: max(1, f.grid.points // 4)]
        bound = _mode_bound(modes, active, t0, sample)
    else:
        bound = True
    log_debug("Mode-wise uniqueness", {"modes": active, "mode_bound_holds": bound})
    return MotionUniquenessReport(float(t0), verdict, reports, bound, f.l2_norm())


@dataclass(frozen=True)
class LaplacianSplitReport:
    lhs: np.ndarray
    rhs: np.ndarray
    step: float

    @property
    def residual(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs), initial=0.0))

    def summary(self) -> dict[str, Any]:
        return {"points": len(self.lhs), "step": self.step, "residual": self.residual}


Evaluator = Callable[[np.ndarray, float], Any]


def _second_difference(func: Callable[[_Element], complex], g: _Element, step: _Element, h: float) -> complex:
    forward = func(g * step)
    backward = func(g * step.inverse())
    return (forward - 2.0 * func(g) + backward) / (h * h)


def laplacian_split_check(
    f: MotionGroupFunction | Evaluator, points: Sequence[_Element], h: float = 1e-3
) -> LaplacianSplitReport:
    """Σ X_i² f along left-invariant flows against Δ_{ℝ²}f + ∂²f/∂β² on fixed axes."""
    evaluator = f.evaluator if isinstance(f, MotionGroupFunction) else f
    if evaluator is None:
        raise PaleyWienerValidationError("Laplacian check needs an exact evaluator", field="f")

    def value(g: _Element) -> complex:
        return complex(np.asarray(evaluator(g.x[None, :], g.beta)).reshape(-1)[0])

    flows = [_Element([h, 0.0], 0.0), _Element([0.0, h], 0.0), _Element([0.0, 0.0], h)]
    lhs, rhs = [], []
    for g in points:
        lhs.append(sum(_second_difference(value, g, step, h) for step in flows))
        euclidean = 0j
        for axis in range(2):
            offset = np.zeros(2)
            offset[axis] = h
            euclidean += (
                value(_Element(g.x + offset, g.beta)) - 2.0 * value(g) + value(_Element(g.x - offset, g.beta))
            ) / (h * h)
        angular = (value(_Element(g.x, g.beta + h)) - 2.0 * value(g) + value(_Element(g.x, g.beta - h))) / (h * h)
        rhs.append(euclidean + angular)
    return LaplacianSplitReport(np.array(lhs), np.array(rhs), h)


def laplacian_split_order(f: MotionGroupFunction | Evaluator, points: Sequence[_Element], h: float = 0.02) -> float:
    """Observed convergence order of the split residual between steps h and h/2."""
    coarse = laplacian_split_check(f, points, h).residual
    fine = laplacian_split_check(f, points, h / 2.0).residual
    if fine == 0.0:
        return math.inf
    return math.log2(coarse / fine)
