# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
Fourier and Radon Transforms on ℝⁿ (n ≤ 3)

Grids are uniform and centered: x_j = −L + j·h with h = 2L/N and N even, so
the origin is a node. The transform convention is

    f̂(y) = ∫ f(x) e^{−i x·y} dx,      f(x) = (2π)^{−n} ∫ f̂(y) e^{i x·y} dy,

and the discrete forward transform lives on the lattice ω_m = π m / L,
m = −N/2 … N/2 − 1.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import integrate, ndimage, special

from paleywiener.exceptions import GridTooCoarse, PaleyWienerValidationError
from paleywiener.logger import log_action, log_debug
from paleywiener.utils.validators import validate_grid

CONVENTION = "exp(-i x.y), inverse (2pi)^-n"
SUPPORT_ATOL = 1e-14
EVEN_RTOL = 1e-10

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Grid:
    dim: int
    half_width: float
    points: int

    def __post_init__(self):
        validate_grid(self.dim, self.half_width, self.points).raise_if_invalid()

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def nyquist(self) -> float:
        return math.pi / self.spacing

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points,) * self.dim

    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    def frequencies(self) -> np.ndarray:
        return math.pi / self.half_width * np.arange(-self.points // 2, self.points // 2)

    def mesh(self) -> np.ndarray:
        """Node coordinates, shape (N,)*dim + (dim,)."""
        axes = np.meshgrid(*([self.axis()] * self.dim), indexing="ij")
        return np.stack(axes, axis=-1)

    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.mesh(), axis=-1)

    def frequency_radii(self) -> np.ndarray:
        axes = np.meshgrid(*([self.frequencies()] * self.dim), indexing="ij")
        return np.sqrt(sum(a * a for a in axes))

    def to_dict(self) -> dict[str, Any]:
        return {"dim": self.dim, "half_width": self.half_width, "points": self.points}


@dataclass(frozen=True)
class SampledFunction:
    """Samples of a compactly supported function on a centered grid.

    ``evaluator``, when present, gives exact off-grid values; it is used by
    the Radon quadrature and never serialized.
    """

    grid: Grid
    values: np.ndarray
    support_radius: float
    evaluator: Evaluator | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_callable(
        cls, func: Evaluator, grid: Grid, support_radius: float, keep_evaluator: bool = True
    ) -> SampledFunction:
        """Sample ``func`` on the grid, zero outside ``support_radius``."""
        values = np.asarray(func(grid.mesh()), dtype=complex)
        values = np.where(grid.radii() > support_radius, 0.0, values)

        def masked(x):
            x = np.asarray(x, dtype=float)
            return np.where(np.linalg.norm(x, axis=-1) > support_radius, 0.0, func(x))

        return cls(grid, values, float(support_radius), masked if keep_evaluator else None)

    @classmethod
    def zeros(cls, grid: Grid) -> SampledFunction:
        return cls(grid, np.zeros(grid.shape, dtype=complex), 0.0, lambda x: np.zeros(np.shape(x)[:-1]))

    @property
    def dim(self) -> int:
        return self.grid.dim

    def support_defect(self) -> float:
        """Largest |value| at nodes outside the declared support."""
        outside = self.grid.radii() > self.support_radius
        return float(np.max(np.abs(self.values[outside]), initial=0.0))

    def has_declared_support(self) -> bool:
        return self.support_defect() < SUPPORT_ATOL

    def l2_norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.grid.spacing**self.dim)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at arbitrary points (..., dim): exact or cubic-spline."""
        points = np.asarray(points, dtype=float)
        if self.evaluator is not None:
            return np.asarray(self.evaluator(points), dtype=complex)
        coords = (points.reshape(-1, self.dim).T + self.grid.half_width) / self.grid.spacing
        real = ndimage.map_coordinates(self.values.real, coords, order=3, mode="nearest")
        imag = ndimage.map_coordinates(self.values.imag, coords, order=3, mode="nearest")
        return (real + 1j * imag).reshape(points.shape[:-1])

    def translated(self, shift) -> SampledFunction:
        """f(· − a)."""
        shift = np.asarray(shift, dtype=float).reshape(self.dim)
        radius = self.support_radius + float(np.linalg.norm(shift))
        if self.evaluator is not None:
            inner = self.evaluator
            return SampledFunction.from_callable(lambda x: inner(x - shift), self.grid, radius)
        steps = shift / self.grid.spacing
        real = ndimage.shift(self.values.real, steps, order=3, mode="constant")
        imag = ndimage.shift(self.values.imag, steps, order=3, mode="constant")
        return SampledFunction(self.grid, real + 1j * imag, radius)

    def __add__(self, other: SampledFunction) -> SampledFunction:
        ev = None
        if self.evaluator is not None and other.evaluator is not None:
            a, b = self.evaluator, other.evaluator
            ev = lambda x: np.asarray(a(x), dtype=complex) + np.asarray(b(x), dtype=complex)  # noqa: E731
        return SampledFunction(
            self.grid, self.values + other.values, max(self.support_radius, other.support_radius), ev
        )

    def scaled(self, factor: complex) -> SampledFunction:
        ev = None
        if self.evaluator is not None:
            inner = self.evaluator
            ev = lambda x: factor * np.asarray(inner(x), dtype=complex)  # noqa: E731
        return SampledFunction(self.grid, factor * self.values, self.support_radius, ev)

    def header(self) -> dict[str, Any]:
        return {
            "kind": "SampledFunction",
            **self.grid.to_dict(),
            "support_radius": self.support_radius,
            "convention": CONVENTION,
        }

    def records(self) -> tuple[list[str], list[list[Any]]]:
        return _records(self.grid.mesh(), self.values, "x")


@dataclass(frozen=True)
class Spectrum:
    grid: Grid
    values: np.ndarray
    convention: str = CONVENTION

    @property
    def dim(self) -> int:
        return self.grid.dim

    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies()

    def frequency_mesh(self) -> np.ndarray:
        axes = np.meshgrid(*([self.frequencies()] * self.dim), indexing="ij")
        return np.stack(axes, axis=-1)

    def hermitian_defect(self) -> float:
        """max |F(−ξ) − conj F(ξ)| over the symmetric part of the lattice."""
        inner = self.values[(slice(1, None),) * self.dim]
        mirrored = inner[(slice(None, None, -1),) * self.dim]
        return float(np.max(np.abs(mirrored - np.conj(inner)), initial=0.0))

    def l2_norm(self) -> float:
        step = math.pi / self.grid.half_width
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * step**self.dim)

    def header(self) -> dict[str, Any]:
        return {"kind": "Spectrum", **self.grid.to_dict(), "convention": self.convention}

    def records(self) -> tuple[list[str], list[list[Any]]]:
        return _records(self.frequency_mesh(), self.values, "xi")


@dataclass(frozen=True)
class Sinogram:
    directions: np.ndarray
    offsets: np.ndarray
    values: np.ndarray
    resolution: int

    def row_spread(self) -> float:
        """Largest disagreement between rows; zero for radial sources."""
        if len(self.values) < 2:
            return 0.0
        return float(np.max(np.abs(self.values - self.values[0])))

    def header(self) -> dict[str, Any]:
        return {
            "kind": "Sinogram",
            "dim": int(self.directions.shape[1]),
            "directions": self.directions.tolist(),
            "offsets": len(self.offsets),
            "resolution": self.resolution,
            "convention": CONVENTION,
        }

    def records(self) -> tuple[list[str], list[list[Any]]]:
        columns = ["direction", "t", "re", "im"]
        rows = [
            [k, t, v.real, v.imag]
            for k in range(len(self.directions))
            for t, v in zip(self.offsets, self.values[k])
        ]
        return columns, rows


def _records(mesh: np.ndarray, values: np.ndarray, prefix: str) -> tuple[list[str], list[list[Any]]]:
    dim = mesh.shape[-1]
    columns = [f"{prefix}{i + 1}" for i in range(dim)] + ["re", "im"]
    coords = mesh.reshape(-1, dim)
    flat = values.reshape(-1)
    rows = [[*c, v.real, v.imag] for c, v in zip(coords.tolist(), flat)]
    return columns, rows


def _lattice_signs(grid: Grid) -> np.ndarray:
    m = np.arange(-grid.points // 2, grid.points // 2)
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    out = np.ones(grid.shape)
    for axis in range(grid.dim):
        shape = [1] * grid.dim
        shape[axis] = grid.points
        out = out * sign.reshape(shape)
    return out


def _require_fits(f: SampledFunction, band: float | None = None) -> None:
    # lattice step π/L samples the transform of a support-R function only for R ≤ L
    if f.support_radius > f.grid.half_width * (1 + 1e-12):
        raise GridTooCoarse(
            "Declared support does not fit inside the grid box",
            details={"support_radius": f.support_radius, "half_width": f.grid.half_width},
        )
    if band is not None and band >= f.grid.nyquist:
        raise GridTooCoarse(
            "Grid spacing cannot resolve the requested band",
            details={"band": band, "nyquist": f.grid.nyquist, "spacing": f.grid.spacing},
        )


def fourier(f: SampledFunction, band: float | None = None) -> Spectrum:
    """Forward transform on the lattice ω_m = πm/L.

    ``band`` is the highest frequency the caller relies on; it must stay
    below the grid Nyquist π/h.
    """
    _require_fits(f, band)
    grid = f.grid
    raw = np.fft.fftshift(np.fft.fftn(f.values))
    return Spectrum(grid, grid.spacing**grid.dim * _lattice_signs(grid) * raw)


def inverse_fourier(spectrum: Spectrum, support_radius: float | None = None) -> SampledFunction:
    """Exact inverse of :func:`fourier`."""
    grid = spectrum.grid
    values = np.fft.ifftn(np.fft.ifftshift(spectrum.values * _lattice_signs(grid))) / grid.spacing**grid.dim
    radius = grid.half_width if support_radius is None else support_radius
    if radius > grid.half_width * (1 + 1e-12):
        raise GridTooCoarse(
            "Requested support does not fit inside the grid box",
            details={"support_radius": radius, "half_width": grid.half_width},
        )
    return SampledFunction(grid, values, float(radius))


def fourier_at(f: SampledFunction, points) -> np.ndarray:
    """Direct quadrature h^n Σ f(x) e^{−ix·y} at arbitrary frequencies (..., dim).

    Frequencies may be complex. The sum runs over the bounding box of the
    non-zero samples only.
    """
    _require_fits(f)
    points = np.asarray(points)
    points = points.astype(complex if np.iscomplexobj(points) else float)
    flat = points.reshape(-1, f.dim)
    nonzero = f.values != 0
    if not nonzero.any():
        return np.zeros(points.shape[:-1], dtype=complex)
    box = []
    for axis in range(f.dim):
        hits = np.flatnonzero(np.any(nonzero, axis=tuple(a for a in range(f.dim) if a != axis)))
        box.append(slice(hits[0], hits[-1] + 1))
    values = f.values[tuple(box)]
    x = f.grid.axis()
    kernels = [np.exp(-1j * np.outer(flat[:, axis], x[box[axis]])) for axis in range(f.dim)]
    if f.dim == 1:
        out = kernels[0] @ values
    elif f.dim == 2:
        out = np.sum((kernels[0] @ values) * kernels[1], axis=1)
    else:
        n0, n1, n2 = values.shape
        partial = (kernels[0] @ values.reshape(n0, n1 * n2)).reshape(-1, n1, n2)
        out = np.einsum("mjk,mj,mk->m", partial, kernels[1], kernels[2])
    return (f.grid.spacing**f.dim * out).reshape(points.shape[:-1])


def unit_directions(dim: int, count: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """Equally spaced angles in the plane, or random points on S² for dim 3."""
    if dim == 2:
        phi = math.pi * np.arange(count) / count
        return np.stack([np.cos(phi), np.sin(phi)], axis=1)
    if dim == 3:
        rng = rng or np.random.default_rng(0)
        v = rng.normal(size=(count, 3))
        return v / np.linalg.norm(v, axis=1, keepdims=True)
    raise PaleyWienerValidationError("Radon transform needs dim 2 or 3", field="dim")


def midpoint_offsets(radius: float, count: int) -> np.ndarray:
    dt = 2.0 * radius / count
    return -radius + (np.arange(count) + 0.5) * dt


def _plane_basis(omega: np.ndarray) -> np.ndarray:
    """Orthonormal basis of ω⊥, shape (dim−1, dim)."""
    if omega.shape[0] == 2:
        return np.array([[-omega[1], omega[0]]])
    helper = np.array([1.0, 0.0, 0.0]) if abs(omega[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(omega, helper)
    u /= np.linalg.norm(u)
    return np.stack([u, np.cross(omega, u)])


@log_action("Radon transform")
def radon(f: SampledFunction, directions, offsets, resolution: int = 512) -> Sinogram:
    """Hyperplane integrals on H_{ω,t} ∩ B(0, support_radius), midpoint rule."""
    if f.dim not in (2, 3):
        raise PaleyWienerValidationError("Radon transform needs dim 2 or 3", field="dim")
    _require_fits(f)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    offsets = np.asarray(offsets, dtype=float)
    radius = f.support_radius
    out = np.zeros((len(directions), len(offsets)), dtype=complex)
    unit = (np.arange(resolution) + 0.5) / resolution * 2.0 - 1.0

    for k, omega in enumerate(directions):
        basis = _plane_basis(omega)
        for j, t in enumerate(offsets):
            if abs(t) >= radius:
                continue
            rho = math.sqrt(radius * radius - t * t)
            s = rho * unit
            if f.dim == 2:
                pts = t * omega + s[:, None] * basis[0]
                weight = 2.0 * rho / resolution
            else:
                s1, s2 = np.meshgrid(s, s, indexing="ij")
                pts = t * omega + s1[..., None] * basis[0] + s2[..., None] * basis[1]
                weight = (2.0 * rho / resolution) ** 2
            out[k, j] = weight * np.sum(f.evaluate(pts))
    return Sinogram(directions, offsets, out, resolution)


@log_action("Slice projection residual")
def slice_projection_residual(
    f: SampledFunction, direction, lambda_grid, resolution: int = 512
) -> float:
    """max_λ |f̂(λω) − F₁(Rf(ω,·))(λ)|, lattice quadrature against transformed sinogram row."""
    omega = np.asarray(direction, dtype=float)
    omega = omega / np.linalg.norm(omega)
    lambdas = np.asarray(lambda_grid, dtype=float)
    if f.support_radius == 0 or not np.any(f.values):
        return 0.0
    direct = fourier_at(f, lambdas[:, None] * omega[None, :])
    offsets = midpoint_offsets(f.support_radius, resolution)
    row = radon(f, omega[None, :], offsets, resolution).values[0]
    dt = offsets[1] - offsets[0]
    projected = np.exp(-1j * np.outer(lambdas, offsets)) @ row * dt
    residual = float(np.max(np.abs(direct - projected)))
    log_debug("Slice projection", {"direction": omega.tolist(), "residual": residual})
    return residual


def radial_spectrum_1d(g: SampledFunction, radii) -> np.ndarray:
    """F₁g at the given |ξ| values by direct sum."""
    if g.dim != 1:
        raise PaleyWienerValidationError("Profile must be one-dimensional", field="g.dim")
    radii = np.asarray(radii, dtype=float)
    flat = radii.reshape(-1)
    out = np.concatenate(
        [fourier_at(g, flat[i : i + 512, None]) for i in range(0, flat.size, 512)] or [np.zeros(0, complex)]
    )
    return out.reshape(radii.shape)


def mirror(values: np.ndarray) -> np.ndarray:
    """Samples of x ↦ f(−x) on a centered 1-D grid."""
    # x_0 = −L pairs with itself
    return np.roll(values[::-1], 1)


def even_defect(g: SampledFunction) -> float:
    """max |g(x) − g(−x)| relative to max |g|."""
    if g.dim != 1:
        raise PaleyWienerValidationError("Profile must be one-dimensional", field="g.dim")
    peak = float(np.max(np.abs(g.values), initial=0.0))
    if peak == 0:
        return 0.0
    return float(np.max(np.abs(g.values - mirror(g.values)))) / peak


@log_action("Radialize")
def radialize(g: SampledFunction, dim: int, grid: Grid) -> SampledFunction:
    """Radial f on ℝⁿ with f̂(y) = (F₁g)(‖y‖), through the n-D inverse transform.

    ``g`` must be even; an odd part would make F₁g depend on the sign of the
    frequency and no radial f has that transform.
    """
    if grid.dim != dim:
        raise PaleyWienerValidationError("Target grid dimension mismatch", field="grid.dim")
    defect = even_defect(g)
    if defect > EVEN_RTOL:
        raise PaleyWienerValidationError(
            "Profile must be even", field="g", errors=[f"relative even defect {defect:.3e}"]
        )
    if g.support_radius > grid.half_width:
        raise GridTooCoarse(
            "Profile support does not fit the target grid",
            details={"support_radius": g.support_radius, "half_width": grid.half_width},
        )
    radii = grid.frequency_radii()
    unique, inverse = np.unique(np.round(radii, 12), return_inverse=True)
    profile = radial_spectrum_1d(g, unique)
    spectrum = Spectrum(grid, profile[inverse].reshape(grid.shape))
    f = inverse_fourier(spectrum, support_radius=g.support_radius)
    values = np.where(grid.radii() > g.support_radius, 0.0, f.values)
    return SampledFunction(grid, values, g.support_radius)


def radial_fourier(profile: Callable[[float], float], dim: int, r, support_radius: float) -> np.ndarray:
    """Transform of x ↦ g(‖x‖) on ℝⁿ as a Bessel integral over [0, support_radius].

    ĝ(r) = (2π)^{n/2} r^{1−n/2} ∫ g(ρ) J_{n/2−1}(rρ) ρ^{n/2} dρ.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    nu = dim / 2.0 - 1.0
    out = np.empty(r_arr.shape)
    for k, rk in enumerate(r_arr.reshape(-1)):
        if rk == 0:
            surface = 2.0 * math.pi ** (dim / 2.0) / float(special.gamma(dim / 2.0))
            value, _ = integrate.quad(lambda p: float(profile(p)) * p ** (dim - 1), 0.0, support_radius, limit=400, epsrel=1e-12)
            out.reshape(-1)[k] = surface * value
            continue
        value, _ = integrate.quad(
            lambda p, rk=rk: float(profile(p)) * float(special.jv(nu, rk * p)) * p ** (dim / 2.0),
            0.0,
            support_radius,
            limit=800,
            epsabs=1e-13,
            epsrel=1e-12,
        )
        out.reshape(-1)[k] = (2.0 * math.pi) ** (dim / 2.0) * rk ** (1.0 - dim / 2.0) * value
    return out if np.ndim(r) else float(out[0])
