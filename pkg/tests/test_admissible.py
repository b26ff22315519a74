"""Ring-count admissibility arithmetic and the double-count refutation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from polycc import (
    CollisionError,
    Verdict,
    admissible,
    double_ring_residuals,
    nonexistence_certificate,
    odd_even_cube_gap,
    odd_even_radial_gap,
    sine_zero_angles,
    tangential_infeasibility_scan,
)
from polycc.admissible import double_ring_residuals_normalized


class TestAdmissible:
    def test_equal_pair(self):
        rep = admissible(3, 3)
        assert rep.verdict is Verdict.EQUAL
        assert (0, 1) in rep.admissible_thetas  # theta = 0
        assert (1, 3) in rep.admissible_thetas  # theta = pi/3
        assert len(rep.admissible_thetas) == 6

    def test_double_pair(self):
        rep = admissible(3, 6)
        assert rep.verdict is Verdict.DOUBLE
        assert rep.divisibility_ok and rep.odd_parts_equal

    def test_inadmissible_pair(self):
        rep = admissible(3, 5)
        assert rep.verdict is Verdict.INADMISSIBLE
        assert not rep.divisibility_ok
        assert rep.admissible_thetas == ()

    def test_verdict_iff_equal_or_double(self):
        for n in range(2, 25):
            for l in range(n, 25):
                rep = admissible(n, l)
                assert (rep.verdict is not Verdict.INADMISSIBLE) == (
                    l == n or l == 2 * n
                )

    def test_thetas_are_reduced_fractions(self):
        rep = admissible(4, 8)
        for p, q in rep.admissible_thetas:
            assert math.gcd(p, q) == 1
            assert 0 <= Fraction(p, q) < 2

    def test_equal_thetas_match_zero_angles(self):
        n = 4
        rep = admissible(n, n)
        exact = sorted(float(Fraction(p, q)) * math.pi for p, q in rep.admissible_thetas)
        found = sine_zero_angles(n, 0.8, 0.6)
        np.testing.assert_allclose(found, exact, atol=1e-10)


class TestTangentialInfeasibility:
    @pytest.mark.parametrize("pair", [(3, 5), (4, 6), (2, 3), (5, 9)])
    def test_no_twist_kills_all_sums(self, pair):
        n, l = pair
        scan = tangential_infeasibility_scan(n, l, 0.8, 0.5)
        assert scan["min_max_tangential"] > 1e-6

    def test_admissible_pair_has_feasible_twist(self):
        scan = tangential_infeasibility_scan(3, 3, 0.8, 0.5, grid_mult=32)
        # grid points straddle the lattice zeros, so the margin is small
        assert scan["min_max_tangential"] < 0.1


class TestDoubleRingSystem:
    def test_vertical_rows_reproduce_cube_gap(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 9))
            a = float(rng.uniform(0.2, 4.0))
            b = float(rng.uniform(0.1, 10.0))
            h = float(rng.uniform(0.05, 3.0))
            r = double_ring_residuals(n, a, b, h)
            assert r[4] - r[5] == pytest.approx(
                h * odd_even_cube_gap(a, h * h, n), rel=1e-10, abs=1e-13
            )

    def test_coplanar_radial_rows_reproduce_radial_gap(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 9))
            a = float(rng.uniform(0.2, 4.0))
            if abs(a - 1.0) < 1e-3:
                continue
            b = float(rng.uniform(0.1, 10.0))
            r = double_ring_residuals(n, a, b, 0.0)
            assert r[1] - r[2] == pytest.approx(
                odd_even_radial_gap(a, n), rel=1e-10, abs=1e-13
            )
            assert r[3] == 0.0 and r[4] == 0.0 and r[5] == 0.0

    def test_first_row_is_zero_by_construction(self):
        r = double_ring_residuals(3, 1.7, 2.0, 0.4)
        assert r[0] == 0.0

    def test_collision_guard(self):
        with pytest.raises(CollisionError):
            double_ring_residuals(3, 1.0, 1.0, 0.0)

    def test_normalized_matches_displayed_for_positive_height(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 7))
            a = float(rng.uniform(0.3, 3.0))
            b = float(rng.uniform(0.2, 5.0))
            h = float(rng.uniform(0.1, 2.0))
            displayed = double_ring_residuals(n, a, b, h)
            normalized = double_ring_residuals_normalized(n, a, b, h)
            np.testing.assert_allclose(displayed[3:], h * normalized[3:], rtol=1e-12)
            np.testing.assert_allclose(displayed[:3], normalized[:3], rtol=1e-12)


class TestNonexistenceCertificate:
    def test_small_counts(self):
        for n in (2, 3):
            cert = nonexistence_certificate(n, draws=2000, seed=7)
            assert cert["vertical_witness"]["sign_ok"]
            assert cert["planar_witness"]["sign_ok"]
            assert cert["planar_witness"]["min_abs"] > 0.0
            assert cert["system_scan"]["min_max_residual"] > 1e-3
            assert cert["random_refutation"]["min_max_residual"] > 1e-4

    def test_polish_never_reaches_zero(self):
        cert = nonexistence_certificate(4, draws=500, seed=1)
        polish = cert["system_scan"]["polish"]
        assert polish["ran"]
        assert not polish["converged_to_zero"]
