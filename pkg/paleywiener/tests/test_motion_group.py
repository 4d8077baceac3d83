"""
Tests for the motion group M(2) and its group Fourier transform
Run with: pytest paleywiener/tests/test_motion_group.py
"""

import math
import unittest

import numpy as np
from scipy import special

from paleywiener.battery import ball_indicator, bump, gaussian, radial_gaussian_sum
from paleywiener.constructor import verify_envelope
from paleywiener.envelopes import parse_envelope
from paleywiener.euclid import Grid, SampledFunction, fourier_at
from paleywiener.exceptions import BandCapExceeded, GridTooCoarse, OverflowGuard, PaleyWienerValidationError
from paleywiener.halfplane import estimate_exponential_type
from paleywiener.motion_group import (
    MotionElement,
    MotionGroupFunction,
    RepresentationPoint,
    bessel_coefficient,
    bi_invariant_profile,
    complexified_entry,
    entry_decay_profile,
    group_fourier,
    group_fourier_dense,
    hs_decay_profile,
    inverse,
    matrix_coefficient,
    multiply,
    plancherel_consistency,
    plancherel_integral,
    representation_matrix,
)
from paleywiener.utils.testing import seeded_rng


def random_element(rng: np.random.Generator, spread: float = 3.0) -> MotionElement:
    return MotionElement(rng.uniform(-spread, spread, size=2), rng.uniform(0.0, 2.0 * math.pi))


def twisted_gaussian(grid: Grid, angles: int) -> MotionGroupFunction:
    """A non-invariant function with angular modes 0, ±1 and ±2."""
    center = np.array([0.5, -0.3])

    def func(x, beta):
        envelope = np.exp(-np.sum((np.asarray(x) - center) ** 2, axis=-1))
        return envelope * (1.0 + 0.5 * math.cos(beta) + 0.3j * math.sin(2.0 * beta))

    return MotionGroupFunction.from_callable(func, grid, angles, math.sqrt(36.841) + float(np.linalg.norm(center)))


class TestGroupLaw(unittest.TestCase):
    """Multiplication and inversion in M(2)."""

    def test_identity(self):
        g = MotionElement([1.5, -0.7], 2.0)
        self.assertEqual(multiply(g, MotionElement.identity()).distance(g), 0.0)
        self.assertEqual(multiply(MotionElement.identity(), g).distance(g), 0.0)

    def test_inverse(self):
        g = MotionElement([1.5, -0.7], 2.0)
        self.assertLess(multiply(g, inverse(g)).distance(MotionElement.identity()), 1e-14)
        self.assertLess(multiply(inverse(g), g).distance(MotionElement.identity()), 1e-14)

    def test_angle_normalized(self):
        self.assertAlmostEqual(MotionElement([0.0, 0.0], -math.pi / 2).beta, 1.5 * math.pi)

    def test_associativity(self):
        """Associativity on 10⁴ random triples."""
        rng = seeded_rng()
        for _ in range(10_000):
            a, b, c = random_element(rng), random_element(rng), random_element(rng)
            self.assertLess(((a * b) * c).distance(a * (b * c)), 1e-12)


class TestMatrixCoefficients(unittest.TestCase):
    """Principal-series matrix entries."""

    def test_identity_operator(self):
        rep = RepresentationPoint(2.0)
        for m in range(-3, 4):
            for mp in range(-3, 4):
                value = matrix_coefficient(rep, m, mp, MotionElement.identity())
                self.assertAlmostEqual(abs(value - (1.0 if m == mp else 0.0)), 0.0, delta=1e-14)

    def test_rotation_is_diagonal(self):
        """x = 0 gives δ_{m,m'}·e^{imβ}."""
        rep = RepresentationPoint(1.0)
        g = MotionElement([0.0, 0.0], 0.9)
        for m in range(-4, 5):
            self.assertAlmostEqual(abs(matrix_coefficient(rep, m, m, g) - np.exp(1j * m * 0.9)), 0.0, delta=1e-14)
            self.assertAlmostEqual(abs(matrix_coefficient(rep, m, m + 1, g)), 0.0, delta=1e-14)

    def test_bessel_value(self):
        """r‖x‖ = 1, m = m' = 0 gives J₀(1)."""
        value = matrix_coefficient(RepresentationPoint(0.5), 0, 0, MotionElement([0.0, 2.0], 0.0))
        self.assertAlmostEqual(value.real, 0.7651976866, delta=1e-10)
        self.assertAlmostEqual(value.imag, 0.0, delta=1e-14)

    def test_quadrature_matches_bessel(self):
        """10³ random coefficients agree with the closed form."""
        rng = seeded_rng(5)
        worst = 0.0
        for _ in range(1000):
            rep = RepresentationPoint(rng.uniform(0.1, 10.0))
            m, mp = (int(v) for v in rng.integers(-20, 21, size=2))
            g = random_element(rng)
            worst = max(worst, abs(matrix_coefficient(rep, m, mp, g) - bessel_coefficient(rep, m, mp, g)))
        self.assertLess(worst, 1e-10)

    def test_band_cap(self):
        with self.assertRaises(BandCapExceeded) as ctx:
            matrix_coefficient(RepresentationPoint(1.0), 300, 0, MotionElement.identity())
        self.assertEqual(ctx.exception.code, "BAND_CAP_EXCEEDED")

    def test_radius_positive(self):
        with self.assertRaises(PaleyWienerValidationError):
            RepresentationPoint(0.0)

    def test_unitarity(self):
        """‖T_r(g)ψ‖ = ‖ψ‖ for band-limited ψ."""
        rng = seeded_rng(8)
        rep = RepresentationPoint(2.0)
        for _ in range(5):
            g = random_element(rng)
            psi = rng.normal(size=17) + 1j * rng.normal(size=17)
            matrix = representation_matrix(rep, g, band=8, out_band=60)
            self.assertAlmostEqual(np.linalg.norm(matrix @ psi), np.linalg.norm(psi), delta=1e-12)

    def test_homomorphism(self):
        """T_r(g₁g₂) = T_r(g₁)·T_r(g₂) on truncations padded by the Bessel margin."""
        rng = seeded_rng(9)
        rep = RepresentationPoint(1.5)
        for _ in range(5):
            g1, g2 = random_element(rng), random_element(rng)
            direct = representation_matrix(rep, g1 * g2, band=6)
            product = representation_matrix(rep, g1, band=70, out_band=6) @ representation_matrix(
                rep, g2, band=6, out_band=70
            )
            np.testing.assert_allclose(product, direct, atol=1e-8)

    def test_matrix_matches_coefficients(self):
        rep = RepresentationPoint(1.2)
        g = MotionElement([0.4, -1.1], 0.3)
        matrix = representation_matrix(rep, g, band=3)
        for i, mp in enumerate(range(-3, 4)):
            for j, m in enumerate(range(-3, 4)):
                self.assertAlmostEqual(abs(matrix[i, j] - bessel_coefficient(rep, m, mp, g)), 0.0, delta=1e-12)


class TestMotionGroupFunction(unittest.TestCase):
    """Sampled functions on ℝ² × SO(2)."""

    def test_mode_cache_resynthesis(self):
        f = twisted_gaussian(Grid(2, 7.0, 32), 32)
        self.assertLess(f.resynthesis_error(), 1e-10)
        self.assertIsNotNone(f.mode(2))
        self.assertIsNone(f.mode(3))

    def test_bi_invariant_has_one_mode(self):
        f = MotionGroupFunction.bi_invariant(gaussian(1.0), Grid(2, 6.5, 64))
        self.assertIsNotNone(f.mode(0))
        self.assertTrue(all(f.mode(n) is None for n in (-3, -1, 1, 2)))

    def test_support(self):
        f = MotionGroupFunction.bi_invariant(ball_indicator(1.0), Grid(2, 1.5, 64))
        radii = Grid(2, 1.5, 64).radii()
        self.assertEqual(float(np.max(np.abs(f.values[radii > 1.0]))), 0.0)

    def test_grid_must_be_planar(self):
        with self.assertRaises(PaleyWienerValidationError):
            MotionGroupFunction(Grid(1, 1.0, 8), 4, np.zeros((8, 4)), 1.0)


class TestGroupFourier(unittest.TestCase):
    """Operator-valued Fourier transform."""

    def test_bi_invariant_gaussian(self):
        """e^{−‖x‖²/2} has the single entry 2π·e^{−r²/2} at (0, 0)."""
        f = MotionGroupFunction.bi_invariant(gaussian(0.5), Grid(2, 9.0, 128))
        for r in (0.5, 1.0, 2.5):
            matrix = group_fourier(f, RepresentationPoint(r), band=6)
            self.assertEqual(matrix.support(1e-8), [(0, 0)])
            self.assertAlmostEqual(matrix.entry(0, 0).real, 2 * math.pi * math.exp(-(r**2) / 2), delta=1e-8)

    def test_bi_invariant_disc(self):
        """The unit disc gives 2π·J₁(r)/r at (0, 0), the circle average of its Euclidean transform."""
        grid = Grid(2, 1.5, 256)
        f = MotionGroupFunction.bi_invariant(ball_indicator(1.0), grid)
        disc = SampledFunction.from_callable(ball_indicator(1.0)[0], grid, 1.0)
        alpha = 2 * math.pi * np.arange(1024) / 1024
        for r in (0.7, 2.0, 5.0):
            entry = group_fourier(f, RepresentationPoint(r), band=4).entry(0, 0)
            circle = r * np.stack([np.cos(alpha), np.sin(alpha)], axis=1)
            average = complex(np.mean(fourier_at(disc, circle)))
            self.assertAlmostEqual(abs(entry - average), 0.0, delta=1e-10)
            self.assertAlmostEqual(entry.real, 2 * math.pi * special.j1(r) / r, delta=2e-2)

    def test_zero_function(self):
        matrix = group_fourier(MotionGroupFunction.zeros(Grid(2, 2.0, 32)), RepresentationPoint(1.0), band=3)
        self.assertEqual(matrix.hs_norm, 0.0)

    def test_single_mode_family(self):
        """g(‖x‖)·e^{iβ} lands in the single entry (−1, −1)."""
        grid = Grid(2, 6.5, 32)
        g = gaussian(1.0)[0]
        f = MotionGroupFunction.from_callable(lambda x, beta: g(x) * np.exp(1j * beta), grid, 32, math.sqrt(36.841))
        rep = RepresentationPoint(1.0)
        matrix = group_fourier(f, rep, band=3)
        self.assertEqual(matrix.support(1e-8), [(-1, -1)])
        dense = group_fourier_dense(f, rep, band=3)
        np.testing.assert_allclose(matrix.entries, dense.entries, atol=1e-8)

    def test_matches_dense_quadrature(self):
        """The mode contraction equals the dense Bessel sum on a 32² × 32 grid."""
        f = twisted_gaussian(Grid(2, 7.0, 32), 32)
        rep = RepresentationPoint(1.3)
        fast = group_fourier(f, rep, band=4)
        dense = group_fourier_dense(f, rep, band=4)
        np.testing.assert_allclose(fast.entries, dense.entries, atol=1e-8)
        self.assertGreater(len(fast.support(1e-6)), 3)

    def test_hs_norm(self):
        f = twisted_gaussian(Grid(2, 7.0, 32), 32)
        matrix = group_fourier(f, RepresentationPoint(0.8), band=5)
        self.assertAlmostEqual(matrix.hs_norm**2, float(np.sum(np.abs(matrix.entries) ** 2)), delta=1e-12)

    def test_grid_too_coarse(self):
        f = MotionGroupFunction.bi_invariant(gaussian(1.0), Grid(2, 6.5, 32))
        with self.assertRaises(GridTooCoarse):
            group_fourier(f, RepresentationPoint(10.0), band=2)

    def test_band_cap(self):
        f = MotionGroupFunction.bi_invariant(gaussian(1.0), Grid(2, 6.5, 32))
        with self.assertRaises(BandCapExceeded):
            group_fourier(f, RepresentationPoint(1.0), band=300)

    def test_records(self):
        f = MotionGroupFunction.bi_invariant(gaussian(1.0), Grid(2, 6.5, 32))
        matrix = group_fourier(f, RepresentationPoint(1.0), band=1)
        columns, rows = matrix.records()
        self.assertEqual(columns, ["m", "m_prime", "re", "im"])
        self.assertEqual(len(rows), 9)
        self.assertIn("convention", matrix.header())


class TestDecayProfiles(unittest.TestCase):
    """Hilbert–Schmidt and entry decay across r."""

    def test_gaussian_hs_profile(self):
        f = MotionGroupFunction.bi_invariant(gaussian(0.5), Grid(2, 9.0, 128))
        for r, hs in hs_decay_profile(f, [0.5, 1.5, 3.0, 5.0]):
            self.assertAlmostEqual(hs, 2 * math.pi * math.exp(-(r**2) / 2), delta=1e-8)

    def test_zero_profile(self):
        f = MotionGroupFunction.zeros(Grid(2, 2.0, 32))
        self.assertEqual([hs for _, hs in hs_decay_profile(f, [0.5, 1.0], band=2)], [0.0, 0.0])

    def test_bump_fails_divergent_envelope(self):
        """A compactly supported bump cannot decay like e^{−r}."""
        f = MotionGroupFunction.bi_invariant(bump(1.0, 4), Grid(2, 1.5, 128))
        r = np.linspace(0.25, 40.0, 160)
        hs = np.array([value for _, value in hs_decay_profile(f, r)])
        self.assertTrue(np.all(hs[r < 5] > 0))
        cert = verify_envelope((r, hs), parse_envelope("linear"), y_max=40.0)
        self.assertFalse(cert.passed)

    def test_entry_profile_matches_hs_for_bi_invariant(self):
        f = MotionGroupFunction.bi_invariant(gaussian(0.5), Grid(2, 9.0, 128))
        r = [0.5, 2.0, 4.0]
        entries = entry_decay_profile(f, 0, 0, r)
        hs = [value for _, value in hs_decay_profile(f, r)]
        np.testing.assert_allclose(entries, hs, atol=1e-10)

    def test_bi_invariant_profile_any_dimension(self):
        """ĝ(r) for e^{−ρ²/2} in ℝ² and ℝ³."""
        r = [0.5, 1.0, 2.0]
        plane = bi_invariant_profile(lambda p: math.exp(-p * p / 2), 2, r, 9.0)
        space = bi_invariant_profile(lambda p: math.exp(-p * p / 2), 3, r, 9.0)
        for (rr, value), (_, value3) in zip(plane, space):
            self.assertAlmostEqual(value, 2 * math.pi * math.exp(-rr * rr / 2), delta=1e-8)
            self.assertAlmostEqual(value3, (2 * math.pi) ** 1.5 * math.exp(-rr * rr / 2), delta=1e-8)

    def test_bi_invariant_profile_matches_group_transform(self):
        f = MotionGroupFunction.bi_invariant(gaussian(0.5), Grid(2, 9.0, 128))
        for r, value in bi_invariant_profile(lambda p: math.exp(-p * p / 2), 2, [0.7, 1.9], 9.0):
            self.assertAlmostEqual(group_fourier(f, RepresentationPoint(r), band=2).entry(0, 0).real, value, delta=1e-8)


class TestComplexifiedEntries(unittest.TestCase):
    """Matrix entries continued to complex r."""

    def test_real_r_matches_transform(self):
        f = twisted_gaussian(Grid(2, 7.0, 32), 32)
        matrix = group_fourier(f, RepresentationPoint(1.1), band=3)
        for m, mp in [(0, 0), (-1, 0), (1, -2), (2, 2)]:
            self.assertAlmostEqual(abs(complexified_entry(f, m, mp, 1.1) - matrix.entry(mp, m)), 0.0, delta=1e-10)

    def test_exponential_type_is_support_radius(self):
        """The disc entry grows like e^{sR} along r = is, for R = 0.5, 1 and 2."""
        for radius in (0.5, 1.0, 2.0):
            f = MotionGroupFunction.bi_invariant(ball_indicator(radius), Grid(2, 1.5 * radius, 128))

            def entry(z, f=f):
                return np.array([complexified_entry(f, 0, 0, complex(v)) for v in np.atleast_1d(z)])

            estimate = estimate_exponential_type(entry, np.linspace(1.0 / radius, 600.0 / radius, 60))
            self.assertAlmostEqual(estimate.slope, radius, delta=0.02 * radius, msg=radius)

    def test_zero_function(self):
        f = MotionGroupFunction.zeros(Grid(2, 2.0, 32))
        self.assertEqual(complexified_entry(f, 0, 0, 3.0 + 2.0j), 0j)

    def test_overflow_guard(self):
        f = MotionGroupFunction.bi_invariant(ball_indicator(1.0), Grid(2, 1.5, 64))
        with self.assertRaises(OverflowGuard):
            complexified_entry(f, 0, 0, 800j)


class TestPlancherel(unittest.TestCase):
    """Consistency of ‖f‖² against ∫‖f̂(T_r)‖²_HS r dr."""

    grid = Grid(2, 5.5, 128)

    def test_random_bi_invariant_functions(self):
        """Five random bi-invariant functions share one ratio, which is 1/(2π)."""
        rng = seeded_rng(21)
        functions = [MotionGroupFunction.bi_invariant(radial_gaussian_sum(rng), self.grid) for _ in range(5)]
        report = plancherel_consistency(functions, band=4, r_max=30.0, points=161)
        self.assertTrue(report.passed)
        self.assertLess(report.spread, 5e-3)
        self.assertAlmostEqual(report.constant, 1.0 / (2.0 * math.pi), delta=1e-4)

    def test_homogeneity(self):
        f = MotionGroupFunction.bi_invariant(gaussian(2.0), self.grid)
        single = plancherel_integral(f, 20.0, 121, band=2)
        double = plancherel_integral(f.scaled(2.0), 20.0, 121, band=2)
        self.assertAlmostEqual(double / single, 4.0, delta=4e-10)

    def test_left_translation_invariance(self):
        f = MotionGroupFunction.bi_invariant(gaussian(2.0), self.grid)
        moved = f.translated([0.5, 0.0])
        base = plancherel_integral(f, 20.0, 121)
        shifted = plancherel_integral(moved, 20.0, 121)
        self.assertAlmostEqual(shifted / base, 1.0, delta=1e-6)

    def test_empty_list(self):
        with self.assertRaises(PaleyWienerValidationError):
            plancherel_consistency([])


if __name__ == "__main__":
    unittest.main()
