# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
The Motion Group M(2)

Elements are pairs (x, β) with x ∈ ℝ² and β the rotation angle, multiplied by
(x₁, β₁)(x₂, β₂) = (x₁ + k(β₁)x₂, β₁ + β₂).

Principal series. For r > 0 the representation T_r acts on L²(S¹, dα/2π) by

    (T_r(x, β)ψ)(α) = e^{i r ⟨x, u(α)⟩} ψ(α − β),    u(α) = (cos α, sin α),

which identifies r with the vector (r, 0). The basis is e_m(α) = e^{−imα},
so that

    ⟨T_r(x, β)e_m, e_m'⟩ = e^{imβ} · i^{m'−m} · e^{i(m'−m)·arg x} · J_{m'−m}(r‖x‖).

Matrices are indexed [m', m], so T_r(g₁g₂) = T_r(g₁)·T_r(g₂). The group
Fourier transform f̂(T_r) = ∫∫ f(x, β) T_r(x, β) dx dβ/2π is computed mode by
mode: the angular mode f_{−m} is transformed on the circle of radius r and an
FFT over the circle yields the whole column m.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from scipy import integrate, ndimage, special

from paleywiener.euclid import Grid, SampledFunction, fourier_at, radial_fourier
from paleywiener.exceptions import BandCapExceeded, GridTooCoarse, OverflowGuard, PaleyWienerValidationError
from paleywiener.logger import log_action, log_debug, log_experiment

BAND_CAP = 256
OVERFLOW_EXPONENT = 700.0
MODE_ATOL = 1e-14
CONVENTION = "T_r(x,b)psi(a) = exp(i r <x,u(a)>) psi(a-b); e_m(a) = exp(-i m a); xi = (r, 0)"
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MotionElement:
    x: np.ndarray
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).reshape(2))
        object.__setattr__(self, "beta", float(self.beta) % TWO_PI)

    @classmethod
    def identity(cls) -> MotionElement:
        return cls(np.zeros(2), 0.0)

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.beta), math.sin(self.beta)
        return np.array([[c, -s], [s, c]])

    def __mul__(self, other: MotionElement) -> MotionElement:
        return MotionElement(self.x + self.rotation @ other.x, self.beta + other.beta)

    def inverse(self) -> MotionElement:
        return MotionElement(-(self.rotation.T @ self.x), -self.beta)

    def distance(self, other: MotionElement) -> float:
        """Max of the translation gap and the angular gap on the circle."""
        gap = abs(self.beta - other.beta) % TWO_PI
        return max(float(np.max(np.abs(self.x - other.x))), min(gap, TWO_PI - gap))

    def polar(self) -> tuple[float, float]:
        return float(np.hypot(*self.x)), float(math.atan2(self.x[1], self.x[0]))


def multiply(g1: MotionElement, g2: MotionElement) -> MotionElement:
    return g1 * g2


def inverse(g: MotionElement) -> MotionElement:
    return g.inverse()


@dataclass(frozen=True)
class RepresentationPoint:
    """Principal series label; the stabilizer in M(2) is trivial so λ has one value."""

    r: float
    lam: str = "trivial"

    def __post_init__(self):
        if not self.r > 0:
            raise PaleyWienerValidationError("Representation radius must be positive", field="r")


def bessel_band(z: float) -> int:
    """Index beyond which |J_k(z)| stays below about 1e-13."""
    z = abs(z)
    return int(math.ceil(z + 10.0 * z ** (1.0 / 3.0))) + 16


def _circle_nodes(bandwidth: int) -> int:
    return max(64, 1 << int(math.ceil(math.log2(2 * bandwidth + 1))))


def _require_band(*indices: int) -> None:
    worst = max(abs(int(i)) for i in indices)
    if worst > BAND_CAP:
        raise BandCapExceeded(
            f"Band {worst} exceeds the cap {BAND_CAP}", details={"band": worst, "cap": BAND_CAP}
        )


def matrix_coefficient(rep: RepresentationPoint, m: int, m_prime: int, g: MotionElement) -> complex:
    """⟨T_r(g)e_m, e_m'⟩ by the trapezoidal rule on the circle."""
    _require_band(m, m_prime)
    rho, phi = g.polar()
    k = m_prime - m
    nodes = _circle_nodes(abs(k) + bessel_band(rep.r * rho))
    alpha = TWO_PI * np.arange(nodes) / nodes
    integrand = np.exp(1j * rep.r * rho * np.cos(alpha - phi) + 1j * k * alpha)
    return complex(np.exp(1j * m * g.beta) * integrand.mean())


def bessel_coefficient(rep: RepresentationPoint, m: int, m_prime: int, g: MotionElement) -> complex:
    """Closed form e^{imβ} i^k e^{ik·arg x} J_k(r‖x‖) with k = m' − m."""
    rho, phi = g.polar()
    k = m_prime - m
    return complex(np.exp(1j * (m * g.beta + k * phi)) * (1j**k) * special.jv(k, rep.r * rho))


def representation_matrix(
    rep: RepresentationPoint, g: MotionElement, band: int, out_band: int | None = None
) -> np.ndarray:
    """Truncated matrix of T_r(g): rows m' ∈ [−out_band, out_band], columns m ∈ [−band, band]."""
    out_band = band if out_band is None else out_band
    _require_band(band, out_band)
    rho, phi = g.polar()
    nodes = _circle_nodes(band + out_band + bessel_band(rep.r * rho))
    alpha = TWO_PI * np.arange(nodes) / nodes
    columns = np.arange(-band, band + 1)
    samples = np.exp(1j * rep.r * rho * np.cos(alpha - phi))[:, None] * np.exp(
        -1j * columns[None, :] * (alpha[:, None] - g.beta)
    )
    coeffs = np.fft.ifft(samples, axis=0)
    rows = np.arange(-out_band, out_band + 1)
    return coeffs[np.mod(rows, nodes), :]


@dataclass(frozen=True)
class MotionGroupFunction:
    """Samples f(x, β) on a centered position grid × M equally spaced angles.

    Values have shape (N, N, M) and vanish for ‖x‖ > support_radius.
    """

    grid: Grid
    angles: int
    values: np.ndarray
    support_radius: float
    evaluator: Callable[[np.ndarray, float], np.ndarray] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.grid.dim != 2:
            raise PaleyWienerValidationError("Motion-group functions live on ℝ² × SO(2)", field="grid.dim")
        if self.values.shape != (*self.grid.shape, self.angles):
            raise PaleyWienerValidationError("Values do not match the grid", field="values")

    @property
    def betas(self) -> np.ndarray:
        return TWO_PI * np.arange(self.angles) / self.angles

    @classmethod
    def from_callable(
        cls,
        func: Callable[[np.ndarray, float], np.ndarray],
        grid: Grid,
        angles: int,
        support_radius: float,
    ) -> MotionGroupFunction:
        mesh = grid.mesh()
        outside = grid.radii() > support_radius
        betas = TWO_PI * np.arange(angles) / angles
        values = np.empty((*grid.shape, angles), dtype=complex)
        for j, beta in enumerate(betas):
            values[..., j] = np.where(outside, 0.0, np.asarray(func(mesh, beta), dtype=complex))

        def masked(x, beta):
            x = np.asarray(x, dtype=float)
            return np.where(np.linalg.norm(x, axis=-1) > support_radius, 0.0, func(x, beta))

        return cls(grid, angles, values, float(support_radius), masked)

    @classmethod
    def bi_invariant(
        cls, profile: tuple[Callable[[np.ndarray], np.ndarray], float], grid: Grid, angles: int = 8
    ) -> MotionGroupFunction:
        """f(x, β) = g(x) for a radial profile ``(g, R)``."""
        func, radius = profile
        return cls.from_callable(lambda x, beta: func(x), grid, angles, radius)

    @classmethod
    def zeros(cls, grid: Grid, angles: int = 8) -> MotionGroupFunction:
        return cls(grid, angles, np.zeros((*grid.shape, angles), dtype=complex), 0.0)

    @cached_property
    def peak(self) -> float:
        return max(float(np.max(np.abs(self.values), initial=0.0)), 1e-300)

    @cached_property
    def mode_numbers(self) -> np.ndarray:
        return np.rint(np.fft.fftfreq(self.angles, 1.0 / self.angles)).astype(int)

    @cached_property
    def mode_cache(self) -> np.ndarray:
        """Angular Fourier coefficients f_n(x) = ∫ f(x, β) e^{−inβ} dβ/2π, shape (M, N, N)."""
        return np.moveaxis(np.fft.fft(self.values, axis=-1) / self.angles, -1, 0)

    def resynthesis_error(self) -> float:
        rebuilt = np.fft.ifft(np.moveaxis(self.mode_cache, 0, -1) * self.angles, axis=-1)
        return float(np.max(np.abs(rebuilt - self.values), initial=0.0))

    def mode(self, n: int) -> SampledFunction | None:
        """The n-th angular mode as a Euclidean function, or None when absent or zero."""
        hits = np.flatnonzero(self.mode_numbers == n)
        if hits.size == 0:
            return None
        values = self.mode_cache[hits[0]]
        if np.max(np.abs(values)) <= MODE_ATOL * self.peak:
            return None
        return SampledFunction(self.grid, values, self.support_radius)

    def l2_norm(self) -> float:
        """‖f‖ for Lebesgue measure on ℝ² and normalized Haar measure on SO(2)."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.grid.spacing**2 / self.angles)

    def scaled(self, factor: complex) -> MotionGroupFunction:
        ev = None
        if self.evaluator is not None:
            inner = self.evaluator
            ev = lambda x, beta: factor * np.asarray(inner(x, beta), dtype=complex)  # noqa: E731
        return MotionGroupFunction(self.grid, self.angles, factor * self.values, self.support_radius, ev)

    def translated(self, shift) -> MotionGroupFunction:
        """Left translation by (shift, 0): f(x − shift, β)."""
        shift = np.asarray(shift, dtype=float).reshape(2)
        radius = self.support_radius + float(np.linalg.norm(shift))
        if self.evaluator is not None:
            inner = self.evaluator
            return MotionGroupFunction.from_callable(
                lambda x, beta: inner(x - shift, beta), self.grid, self.angles, radius
            )
        steps = (*(shift / self.grid.spacing), 0.0)
        real = ndimage.shift(self.values.real, steps, order=3, mode="constant")
        imag = ndimage.shift(self.values.imag, steps, order=3, mode="constant")
        return MotionGroupFunction(self.grid, self.angles, real + 1j * imag, radius)

    def summary(self) -> dict[str, Any]:
        return {
            **self.grid.to_dict(),
            "angles": self.angles,
            "support_radius": self.support_radius,
            "l2_norm": self.l2_norm(),
        }


@dataclass(frozen=True)
class GroupFourierMatrix:
    rep: RepresentationPoint
    band: int
    entries: np.ndarray

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.band, self.band + 1)

    @property
    def hs_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.entries) ** 2)))

    def entry(self, m_prime: int, m: int) -> complex:
        return complex(self.entries[m_prime + self.band, m + self.band])

    def support(self, tol: float = 1e-8) -> list[tuple[int, int]]:
        """(m', m) pairs whose entry exceeds ``tol`` in modulus."""
        rows, cols = np.nonzero(np.abs(self.entries) > tol)
        return [(int(i) - self.band, int(j) - self.band) for i, j in zip(rows, cols)]

    def header(self) -> dict[str, Any]:
        return {"r": self.rep.r, "B": self.band, "convention": CONVENTION, "hs_norm": self.hs_norm}

    def records(self) -> tuple[list[str], list[list[Any]]]:
        rows = []
        for i, mp in enumerate(self.indices.tolist()):
            for j, m in enumerate(self.indices.tolist()):
                value = self.entries[i, j]
                rows.append([m, mp, float(value.real), float(value.imag)])
        return ["m", "m_prime", "re", "im"], rows


def _require_resolved(f: MotionGroupFunction, r: complex) -> None:
    nyquist = f.grid.nyquist
    if abs(complex(r).real) >= nyquist:
        raise GridTooCoarse(
            "Position grid cannot resolve the representation radius",
            details={"r": abs(complex(r).real), "nyquist": nyquist},
        )
    if f.support_radius > f.grid.half_width:
        raise GridTooCoarse(
            "Support does not fit the position grid",
            details={"support_radius": f.support_radius, "half_width": f.grid.half_width},
        )


def _column(f: MotionGroupFunction, m: int, r: complex, rows: np.ndarray, nodes: int) -> np.ndarray:
    """Entries [m', m] for m' in ``rows``."""
    mode = f.mode(-m)
    if mode is None:
        return np.zeros(rows.shape, dtype=complex)
    alpha = TWO_PI * np.arange(nodes) / nodes
    points = -r * np.stack([np.cos(alpha), np.sin(alpha)], axis=1)
    coeffs = np.fft.ifft(fourier_at(mode, points))
    return coeffs[np.mod(rows - m, nodes)]


def default_band(f: MotionGroupFunction, r: float) -> int:
    return bessel_band(r * f.support_radius)


@log_action("Group Fourier transform")
def group_fourier(f: MotionGroupFunction, rep: RepresentationPoint, band: int | None = None) -> GroupFourierMatrix:
    """f̂(T_r) truncated to modes [−B, B]."""
    band = default_band(f, rep.r) if band is None else band
    _require_band(band)
    _require_resolved(f, rep.r)
    indices = np.arange(-band, band + 1)
    nodes = _circle_nodes(2 * band + bessel_band(rep.r * f.support_radius))
    entries = np.zeros((indices.size, indices.size), dtype=complex)
    for j, m in enumerate(indices.tolist()):
        entries[:, j] = _column(f, m, rep.r, indices, nodes)
    return GroupFourierMatrix(rep, band, entries)


def group_fourier_dense(f: MotionGroupFunction, rep: RepresentationPoint, band: int) -> GroupFourierMatrix:
    """Reference transform: Σ_x Σ_β f(x, β) ⟨T_r(x, β)e_m, e_m'⟩ h² / M with Bessel coefficients."""
    _require_band(band)
    mesh = f.grid.mesh()
    rho = np.hypot(mesh[..., 0], mesh[..., 1])
    phi = np.arctan2(mesh[..., 1], mesh[..., 0])
    weight = f.grid.spacing**2 / f.angles
    indices = np.arange(-band, band + 1)
    entries = np.zeros((indices.size, indices.size), dtype=complex)
    for j, m in enumerate(indices.tolist()):
        rotated = np.sum(f.values * np.exp(1j * m * f.betas), axis=-1)
        for i, mp in enumerate(indices.tolist()):
            k = mp - m
            kernel = (1j**k) * np.exp(1j * k * phi) * special.jv(k, rep.r * rho)
            entries[i, j] = weight * np.sum(rotated * kernel)
    return GroupFourierMatrix(rep, band, entries)


def hs_decay_profile(
    f: MotionGroupFunction, r_grid: Sequence[float], band: int | None = None
) -> list[tuple[float, float]]:
    """(r, ‖f̂(T_r)‖_HS) across ``r_grid``."""
    profile = []
    for r in np.asarray(r_grid, dtype=float).tolist():
        profile.append((r, group_fourier(f, RepresentationPoint(r), band).hs_norm))
    return profile


def complexified_entry(f: MotionGroupFunction, m: int, m_prime: int, r: complex) -> complex:
    """⟨f̂(T_r)e_m, e_m'⟩ continued to complex r through the same quadrature."""
    _require_band(m, m_prime)
    r = complex(r)
    if abs(r.imag) * f.support_radius > OVERFLOW_EXPONENT:
        raise OverflowGuard(
            "Imaginary part of r too large for the support radius",
            details={"im_r": r.imag, "support_radius": f.support_radius},
        )
    _require_resolved(f, r)
    if f.mode(-m) is None:
        return 0j
    nodes = _circle_nodes(abs(m_prime - m) + bessel_band(abs(r) * f.support_radius))
    return complex(_column(f, m, r, np.array([m_prime]), nodes)[0])


def entry_decay_profile(f: MotionGroupFunction, m: int, m_prime: int, r_grid: Sequence[float]) -> np.ndarray:
    """|⟨f̂(T_r)e_m, e_m'⟩| across ``r_grid``."""
    return np.array([abs(complexified_entry(f, m, m_prime, r)) for r in np.asarray(r_grid, dtype=float)])


def bi_invariant_profile(
    profile: Callable[[float], float], dim: int, r_grid: Sequence[float], support_radius: float
) -> list[tuple[float, float]]:
    """(r, ĝ(r)) for f(x, k) = g(‖x‖) on M(n); ĝ(r) is the only non-zero entry of f̂(T_r)."""
    r = np.asarray(r_grid, dtype=float)
    values = radial_fourier(profile, dim, r, support_radius)
    return list(zip(r.tolist(), np.atleast_1d(values).tolist()))


@dataclass(frozen=True)
class PlancherelReport:
    norms_squared: tuple[float, ...]
    integrals: tuple[float, ...]
    r_max: float
    tolerance: float

    @property
    def ratios(self) -> np.ndarray:
        return np.asarray(self.norms_squared) / np.asarray(self.integrals)

    @property
    def constant(self) -> float:
        return float(np.mean(self.ratios))

    @property
    def spread(self) -> float:
        ratios = self.ratios
        return float((ratios.max() - ratios.min()) / abs(ratios.mean()))

    @property
    def passed(self) -> bool:
        return bool(self.spread <= self.tolerance)

    def summary(self) -> dict[str, Any]:
        return {"functions": len(self.integrals), "constant": self.constant, "spread": self.spread, "passed": self.passed}

    def rows(self) -> list[list[float]]:
        return [[n, p, n / p] for n, p in zip(self.norms_squared, self.integrals)]


def plancherel_integral(f: MotionGroupFunction, r_max: float, points: int = 241, band: int | None = None) -> float:
    """∫₀^{r_max} ‖f̂(T_r)‖²_HS r dr by Simpson's rule."""
    r = np.linspace(0.0, r_max, points)
    hs = np.array([value for _, value in hs_decay_profile(f, r[1:], band)])
    integrand = np.concatenate([[0.0], hs**2 * r[1:]])
    return float(integrate.simpson(integrand, x=r))


@log_experiment("Plancherel consistency")
def plancherel_consistency(
    functions: Sequence[MotionGroupFunction],
    band: int | None = None,
    r_max: float = 30.0,
    points: int = 241,
    tolerance: float = 5e-3,
) -> PlancherelReport:
    """Ratios ‖f‖²/P(f); consistent when their relative spread is within ``tolerance``."""
    if not functions:
        raise PaleyWienerValidationError("Need at least one function", field="functions")
    norms, integrals = [], []
    for f in functions:
        norms.append(f.l2_norm() ** 2)
        integrals.append(plancherel_integral(f, r_max, points, band))
        log_debug("Plancherel pair", {"norm_squared": norms[-1], "integral": integrals[-1]})
    return PlancherelReport(tuple(norms), tuple(integrals), r_max, tolerance)
