"""
Tests for upper half-plane Poisson integrals and exponential type
Run with: pytest paleywiener/tests/test_halfplane.py
"""

import math
import unittest

import numpy as np

from paleywiener.battery import box_transform, entire_sinc, modulated_sinc, sinc_boundary
from paleywiener.envelopes import Verdict, parse_envelope
from paleywiener.exceptions import (
    DegenerateData,
    InsufficientCoverage,
    InvalidBoundaryData,
    NotAdmissible,
    PaleyWienerValidationError,
)
from paleywiener.halfplane import (
    BoundaryLogData,
    estimate_exponential_type,
    log_majorant_check,
    poisson_integral,
    poisson_kernel_mass,
    truncated_poisson_profile,
)
from paleywiener.utils.testing import random_points_upper_half_plane


def sinc_poisson_closed_form(a: float, z: complex) -> float:
    """Harmonic extension of log|sinc(at)|: log|sin(az)| − a·Im z − log|az|."""
    return math.log(abs(np.sin(a * z))) - a * z.imag - math.log(abs(a * z))


class TestBoundaryData(unittest.TestCase):
    """Boundary log-modulus validation."""

    def test_uniform_grid_required(self):
        with self.assertRaises(InvalidBoundaryData):
            BoundaryLogData(np.array([0.0, 1.0, 3.0]), np.zeros(3))

    def test_nan_rejected(self):
        with self.assertRaises(InvalidBoundaryData):
            BoundaryLogData(np.linspace(-1, 1, 5), np.array([0.0, np.nan, 0.0, 0.0, 0.0]))

    def test_adjacent_zeros_rejected(self):
        """Two neighbouring −∞ samples are not simple zeros."""
        u = np.zeros(7)
        u[3] = u[4] = -np.inf
        with self.assertRaises(InvalidBoundaryData) as ctx:
            BoundaryLogData(np.linspace(-1, 1, 7), u)
        self.assertEqual(ctx.exception.code, "INVALID_BOUNDARY_DATA")

    def test_zeros_on_nodes(self):
        """sinc(t) sampled at multiples of π/512 has −∞ exactly at its zeros."""
        b = sinc_boundary(1.0, half_periods=4)
        zeros = b.t_grid[np.isneginf(b.log_modulus)]
        np.testing.assert_allclose(zeros, math.pi * np.array([-3, -2, -1, 1, 2, 3]), atol=1e-12)


class TestPoissonIntegral(unittest.TestCase):
    """Poisson integrals of boundary data."""

    def test_kernel_mass(self):
        """Grid trapezoid plus tails integrates the kernel to 1."""
        b = BoundaryLogData.constant(0.0, np.linspace(-200, 200, 40001))
        for x, y in [(0.0, 1.0), (3.0, 0.5), (-7.5, 2.0)]:
            self.assertAlmostEqual(poisson_kernel_mass(b, x, y), 1.0, delta=1e-10)

    def test_constant_modulus(self):
        """|g| ≡ 1/2 has Poisson integral log(1/2) everywhere."""
        b = BoundaryLogData.constant(math.log(0.5), np.linspace(-100, 100, 20001))
        for z in random_points_upper_half_plane(5):
            self.assertAlmostEqual(poisson_integral(b, z.real, z.imag), math.log(0.5), delta=1e-9)

    def test_sinc_closed_form(self):
        """log|sinc(t)| extends to log|sin z| − y − log|z|."""
        b = sinc_boundary(1.0)
        self.assertAlmostEqual(poisson_integral(b, 0.0, 1.0), sinc_poisson_closed_form(1.0, 1j), delta=1e-6)
        for z in random_points_upper_half_plane(5, seed=7):
            self.assertAlmostEqual(
                poisson_integral(b, z.real, z.imag), sinc_poisson_closed_form(1.0, z), delta=1e-6
            )

    def test_insufficient_coverage(self):
        """Without a tail model the grid must carry the kernel mass."""
        b = BoundaryLogData(np.linspace(-10, 10, 2001), np.zeros(2001))
        with self.assertRaises(InsufficientCoverage):
            poisson_integral(b, 0.0, 1.0)

    def test_boundary_point_rejected(self):
        b = BoundaryLogData.constant(0.0, np.linspace(-10, 10, 101))
        with self.assertRaises(PaleyWienerValidationError):
            poisson_integral(b, 0.0, 0.0)


class TestLogMajorant(unittest.TestCase):
    """log|g(z)| ≤ P[log|g|](z) for bounded analytic g."""

    def test_admissible_family(self):
        """e^{ibz}·sinc(az) with b ≥ a satisfies the inequality at random points."""
        points = random_points_upper_half_plane(20)
        for a, b in [(1.0, 1.0), (0.5, 0.5), (2.0, 2.0), (1.0, 2.0)]:
            report = log_majorant_check(modulated_sinc(a, b), sinc_boundary(a), points)
            self.assertTrue(report.holds, (a, b))
            self.assertGreaterEqual(report.min_margin, -1e-6, (a, b))

    def test_equality_and_gap(self):
        """b = a is extremal; b > a leaves the margin (b − a)·y."""
        points = random_points_upper_half_plane(6, seed=3)
        boundary = sinc_boundary(1.0)
        tight = log_majorant_check(modulated_sinc(1.0, 1.0), boundary, points)
        loose = log_majorant_check(modulated_sinc(1.0, 2.0), boundary, points)
        for p in tight.points:
            self.assertAlmostEqual(p.margin, 0.0, delta=1e-6)
        for p in loose.points:
            self.assertAlmostEqual(p.margin, p.y, delta=1e-6)

    def test_constant_and_exponential(self):
        """g ≡ 1/2 is tight; g = e^{iz} has margin y."""
        t = np.linspace(-100, 100, 20001)
        points = random_points_upper_half_plane(4, seed=11)
        half = log_majorant_check(lambda z: np.full(np.shape(z), 0.5 + 0j), BoundaryLogData.constant(math.log(0.5), t), points)
        self.assertLess(max(abs(p.margin) for p in half.points), 1e-9)
        wave = log_majorant_check(lambda z: np.exp(1j * np.asarray(z)), BoundaryLogData.constant(0.0, t), points)
        for p in wave.points:
            self.assertAlmostEqual(p.margin, p.y, delta=1e-9)

    def test_unbounded_function_rejected(self):
        """2·sin(z)/z exceeds 1 on the real axis."""
        g = box_transform(1.0)
        b = BoundaryLogData.from_function(g, np.linspace(-50, 50, 1001), (-1.0, 0.0))
        with self.assertRaises(NotAdmissible):
            log_majorant_check(g, b, [1j])

    def test_report_rows(self):
        report = log_majorant_check(modulated_sinc(1.0, 2.0), sinc_boundary(1.0), [0.5 + 1j])
        (row,) = report.rows()
        self.assertEqual(row[:2], [0.5, 1.0])
        self.assertAlmostEqual(row[4], row[3] - row[2])


class TestExponentialType(unittest.TestCase):
    """Growth rate along the imaginary axis."""

    def test_box_transform_type(self):
        """The transform of the indicator of [−a, a] has type a."""
        for a in (0.5, 1.0, 3.0):
            r = np.linspace(1.0, 600.0 / a, 2000)
            estimate = estimate_exponential_type(box_transform(a), r)
            self.assertAlmostEqual(estimate.slope, a, delta=0.01 * a)
            self.assertAlmostEqual(estimate.log_coefficient, -1.0, delta=0.05)

    def test_constant_has_type_zero(self):
        estimate = estimate_exponential_type(lambda z: np.ones_like(z), np.linspace(1, 100, 500))
        self.assertAlmostEqual(estimate.slope, 0.0, delta=1e-9)

    def test_convolution_adds_types(self):
        """Squaring the transform doubles the type."""
        g = box_transform(1.0)
        estimate = estimate_exponential_type(lambda z: g(z) ** 2, np.linspace(1, 300, 2000))
        self.assertAlmostEqual(estimate.slope, 2.0, delta=0.02)

    def test_modulation_keeps_type(self):
        """Shifting the transform by a real frequency leaves the type unchanged."""
        g = box_transform(1.5)
        r = np.linspace(1.0, 400.0, 2000)
        base = estimate_exponential_type(g, r)
        moved = estimate_exponential_type(lambda z: g(np.asarray(z) - 3.0), r)
        self.assertAlmostEqual(moved.slope, base.slope, delta=0.01 * base.slope)

    def test_vanishing_function(self):
        with self.assertRaises(DegenerateData):
            estimate_exponential_type(lambda z: np.zeros_like(z), np.linspace(1, 10, 50))

    def test_entire_sinc_at_origin(self):
        self.assertEqual(complex(entire_sinc(0.0)), 1.0)


class TestTruncatedPoisson(unittest.TestCase):
    """Poisson integrals of −θ over growing windows."""

    def test_linear_diverges(self):
        """θ(t) = t drives the value at i down like −(2/π)·log T."""
        profile = truncated_poisson_profile(parse_envelope("linear"), 0.0, 1.0)
        self.assertTrue(profile.monotone)
        self.assertIs(profile.verdict, Verdict.DIVERGENT)
        expected = -math.log1p(2.0**40) / math.pi
        self.assertAlmostEqual(profile.values[-1], expected, delta=1e-6)
        self.assertLess(profile.values[-1], -8.5)

    def test_sqrt_converges(self):
        """θ(t) = √t has a finite limit (−√2 at i)."""
        profile = truncated_poisson_profile(parse_envelope("sqrt"), 0.0, 1.0)
        self.assertTrue(profile.monotone)
        self.assertIs(profile.verdict, Verdict.CONVERGENT)
        self.assertGreater(profile.values[-1], -math.sqrt(2.0))
        self.assertAlmostEqual(profile.values[-1], -math.sqrt(2.0), delta=2e-3)

    def test_zero_envelope(self):
        profile = truncated_poisson_profile(parse_envelope("zero"))
        np.testing.assert_array_equal(profile.values, 0.0)
        self.assertIs(profile.verdict, Verdict.CONVERGENT)

    def test_rows(self):
        profile = truncated_poisson_profile(parse_envelope("sqrt"), windows=4, t_max=16.0)
        np.testing.assert_allclose([row[0] for row in profile.rows()], [1.0, 2.0, 4.0, 8.0, 16.0])


if __name__ == "__main__":
    unittest.main()
