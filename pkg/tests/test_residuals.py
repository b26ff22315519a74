"""Ring constants, the six balance families, and the reduced systems."""

import math

import numpy as np
import pytest

from polycc import (
    DegenerateError,
    TwistedPairParams,
    cc_residual,
    centered_positions,
    planar_mass_ratio,
    residual_vector,
    self_interaction_constant,
    spatial_system,
    equal_size_height,
)


class TestRingConstant:
    def test_closed_form_values(self):
        # oracle: direct complex summation; closed form sum 1/(4 sin(pi j/n))
        assert self_interaction_constant(2) == pytest.approx(0.25, abs=1e-15)
        assert self_interaction_constant(3) == pytest.approx(1 / math.sqrt(3), abs=1e-14)
        assert self_interaction_constant(4) == pytest.approx(
            0.25 + math.sqrt(2) / 2, abs=1e-14
        )

    @pytest.mark.parametrize("n", range(2, 65))
    def test_matches_cosecant_form(self, n):
        closed = sum(1.0 / (4.0 * math.sin(math.pi * j / n)) for j in range(1, n))
        assert self_interaction_constant(n) == pytest.approx(closed, rel=1e-13)

    def test_strictly_increasing(self):
        vals = [self_interaction_constant(n) for n in range(2, 65)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestResidualVector:
    def test_regular_hexagon_all_zero(self):
        rv = residual_vector(TwistedPairParams(3, 3, 1.0, 1.0, 0.0, math.pi / 3))
        assert rv.max_abs() < 1e-12
        assert rv.vertical_lower_gap == 0.0 and rv.vertical_upper_gap == 0.0

    def test_square_all_zero(self):
        rv = residual_vector(TwistedPairParams(2, 2, 1.0, 1.0, 0.0, math.pi / 2))
        assert rv.max_abs() < 1e-12

    def test_wrong_height_breaks_vertical_only(self):
        rv = residual_vector(TwistedPairParams(3, 3, 1.0, 1.0, 0.5, 0.0))
        assert np.abs(rv.tangential_lower).max() < 1e-12
        assert np.abs(rv.tangential_upper).max() < 1e-12
        assert abs(rv.vertical_lower_gap) > 1e-3
        # cross-check against the oracle: not central at the wrong height
        rep = cc_residual(centered_positions(TwistedPairParams(3, 3, 1.0, 1.0, 0.5, 0.0)))
        assert not rep.is_central

    @pytest.mark.parametrize("twist_num", [0, 1])
    def test_tangential_vanishes_at_admissible_twists(self, rng, twist_num):
        for _ in range(20):
            n = int(rng.integers(2, 9))
            theta = twist_num * math.pi / n
            a = float(rng.uniform(0.3, 3.0))
            h = float(rng.uniform(0.0, 2.0))
            if h == 0.0 and abs(a - 1.0) < 1e-6 and twist_num == 0:
                continue
            rv = residual_vector(TwistedPairParams(n, n, a, 1.3, h, theta))
            assert np.abs(rv.tangential_lower).max() < 1e-12
            assert np.abs(rv.tangential_upper).max() < 1e-12

    def test_equivalence_with_oracle_random(self, rng):
        agree = 0
        for _ in range(100):
            n = int(rng.integers(2, 8))
            params = TwistedPairParams(
                n,
                n,
                float(rng.uniform(0.3, 3.0)),
                float(rng.uniform(0.1, 10.0)),
                float(rng.uniform(0.0, 2.0)),
                float(rng.uniform(0.0, 2 * math.pi)),
            )
            try:
                rv = residual_vector(params)
                rep = cc_residual(centered_positions(params), tolerance=1e-8)
            except Exception:
                continue
            assert (rv.max_abs() <= 1e-9) == rep.is_central
            agree += 1
        assert agree >= 90


class TestPlanarMassRatio:
    def test_defining_property(self):
        for n, a, twist in ((2, 0.5, 0.0), (3, 0.5, 0.0), (5, 2.2, 0.0), (4, 0.8, math.pi / 4)):
            b = planar_mass_ratio(n, a, twist)
            if b <= 0:
                continue
            rv = residual_vector(TwistedPairParams(n, n, a, b, 0.0, twist))
            assert rv.max_abs() < 1e-9

    def test_oracle_verifies_positive_branch(self):
        b = planar_mass_ratio(3, 0.5, 0.0)
        assert b > 0
        rep = cc_residual(
            centered_positions(TwistedPairParams(3, 3, 0.5, b, 0.0, 0.0)),
            tolerance=1e-10,
        )
        assert rep.is_central

    def test_interleaved_limit_is_one(self):
        # approaching equal radii along the interleaved twist recovers the
        # equal-mass ring pair
        for k in (3, 5, 7):
            for sign in (+1, -1):
                b = planar_mass_ratio(3, 1.0 + sign * 10.0**-k, math.pi / 3)
                assert b == pytest.approx(1.0, abs=10.0 ** -(k - 2))

    def test_aligned_limit_is_minus_one(self):
        # aligned twist at h = 0 approaches the two-ring collision; the
        # balancing mass ratio tends to -1, so no physical pair survives
        for k in (4, 6):
            for sign in (+1, -1):
                b = planar_mass_ratio(3, 1.0 + sign * 10.0**-k, 0.0)
                assert b == pytest.approx(-1.0, abs=10.0 ** -(k - 2))

    def test_a_one_rejected(self):
        with pytest.raises(ValueError):
            planar_mass_ratio(3, 1.0, 0.0)


class TestSpatialSystem:
    @pytest.mark.parametrize("n", [2, 3, 6])
    @pytest.mark.parametrize("twist_num", [0, 1])
    def test_unique_height_zeroes_system(self, n, twist_num):
        twist = twist_num * math.pi / n
        h = equal_size_height(n, twist)
        r1, r2 = spatial_system(n, twist, 1.0, 1.0, h)
        assert abs(r1) < 1e-10 and abs(r2) < 1e-10

    def test_zero_of_system_is_central(self):
        h = equal_size_height(4, 0.0)
        rv = residual_vector(TwistedPairParams(4, 4, 1.0, 1.0, h, 0.0))
        assert rv.max_abs() < 1e-9

    def test_unequal_masses_never_balance_equal_rings(self):
        # equal radii with b != 1: no height can balance the stack
        for h in np.geomspace(0.01, 100.0, 60):
            r1, r2 = spatial_system(3, 0.0, 1.0, 2.0, float(h))
            assert max(abs(r1), abs(r2)) > 1e-3
