"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS line when its criterion holds (pytest -s shows
them); any assertion failure marks the criterion red.
"""

import math
import time

import numpy as np
import pytest

from polycc import (
    BodySystem,
    TwistedPairParams,
    admissible,
    cc_residual,
    centered_positions,
    equal_size_height,
    existence_scan_b,
    nonexistence_certificate,
    odd_even_cube_gap,
    odd_even_radial_gap,
    odd_even_sqrt_gap,
    residual_vector,
    scan_rows_to_csv,
    self_interaction_constant,
    series_coeffs,
    sine_zero_angles,
    solve_planar,
    tangential_infeasibility_scan,
    Verdict,
)

from conftest import regular_ngon, rotation_matrix


def report(num, text):
    print(f"ACCEPTANCE {num:>2} PASS: {text}")


def test_criterion_1_oracle_sanity():
    t0 = time.time()
    for n in range(2, 13):
        rep = cc_residual(regular_ngon(n))
        assert rep.max_residual_norm < 1e-10
        const = self_interaction_constant(n)
        assert abs(rep.lam - const) <= 1e-10 * abs(const)
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report(1, f"regular ring lambda matches ring constant, N=2..12 ({elapsed:.2f}s)")


def test_criterion_2_regular_double_ring():
    t0 = time.time()
    for n in range(2, 13):
        good = cc_residual(
            centered_positions(TwistedPairParams(n, n, 1.0, 1.0, 0.0, math.pi / n))
        )
        assert good.max_residual_norm < 1e-10
        bad = cc_residual(
            centered_positions(TwistedPairParams(n, n, 1.0, 1.01, 0.0, math.pi / n))
        )
        assert bad.max_residual_norm > 1e-4
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report(2, f"interleaved equal rings central, b=1.01 breaks it ({elapsed:.2f}s)")


def test_criterion_3_zero_angle_characterization():
    t0 = time.time()
    for n in range(2, 11):
        for a in (0.5, 1.0, 2.0):
            for h in (0.0, 0.5, 2.0):
                zeros = sine_zero_angles(n, a, h)
                lattice = sorted((j * math.pi / n) % (2 * math.pi) for j in range(1, 2 * n + 1))
                if a == 1.0 and h == 0.0:
                    collisions = {(2 * math.pi * j / n) % (2 * math.pi) for j in range(n)}
                    lattice = [
                        t for t in lattice
                        if all(abs(t - c) > 1e-9 for c in collisions)
                    ]
                assert len(zeros) == len(lattice), (n, a, h, zeros)
                np.testing.assert_allclose(zeros, lattice, atol=1e-10)
    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(3, f"zero twists sit exactly on the pi/N lattice ({elapsed:.2f}s)")


def test_criterion_4_planar_two_root_structure():
    t0 = time.time()
    for n in range(3, 13):
        for b in (0.1, 0.5, 1.0, 2.0, 10.0):
            results = solve_planar(n, b, 0.0)
            assert len(results) == 2, (n, b)
            assert all(r.converged for r in results)
            a_small, a_large = sorted(r.params.a for r in results)
            assert a_small < 1.0 < a_large
            if b == 1.0:
                assert abs(a_small * a_large - 1.0) <= 1e-8
    elapsed = time.time() - t0
    assert elapsed < 30.0
    report(4, f"exactly two verified coplanar roots per mass ratio ({elapsed:.2f}s)")


def test_criterion_5_unique_heights():
    t0 = time.time()
    for n in range(2, 11):
        for twist in (0.0, math.pi / n):
            h = equal_size_height(n, twist)  # raises unless exactly one bracket
            rep = cc_residual(
                centered_positions(TwistedPairParams(n, n, 1.0, 1.0, h, twist)),
                tolerance=1e-8,
            )
            assert rep.is_central

    # independent raw 4-body check for the orthogonal two-pair stack:
    # Newton on the per-body balance with (h, lambda) unknown
    def residuals(x):
        h, lam = x
        pos = np.array(
            [
                [1.0, 0.0, -h / 2],
                [-1.0, 0.0, -h / 2],
                [0.0, 1.0, h / 2],
                [0.0, -1.0, h / 2],
            ]
        )
        force = np.zeros(3)
        for j in range(1, 4):
            d = pos[j] - pos[0]
            force += d / np.linalg.norm(d) ** 3
        r = force + lam * pos[0]
        return np.array([r[0], r[2]])

    x = np.array([1.0, 0.3])
    for _ in range(80):
        f0 = residuals(x)
        jac = np.empty((2, 2))
        for i in range(2):
            dx = np.zeros(2)
            dx[i] = 1e-8
            jac[:, i] = (residuals(x + dx) - residuals(x - dx)) / 2e-8
        x = x + np.linalg.solve(jac, -f0)
    assert np.max(np.abs(residuals(x))) < 1e-12
    assert abs(equal_size_height(2, math.pi / 2) - x[0]) <= 1e-8

    elapsed = time.time() - t0
    assert elapsed < 10.0
    report(5, f"unique equal-size heights, raw 4-body cross-check agrees ({elapsed:.2f}s)")


def test_criterion_6_sign_suites():
    t0 = time.time()
    for n in range(2, 13):
        inner = odd_even_radial_gap(np.geomspace(1e-3, 1.0 - 1e-6, 200), n)
        outer = odd_even_radial_gap(np.geomspace(1.0 + 1e-6, 1e3, 200), n)
        assert np.all(inner > 0.0), n
        assert np.all(outer < 0.0), n

    a_grid = np.geomspace(0.05, 20.0, 200)
    x_grid = np.concatenate([[0.0], np.geomspace(1e-2, 100.0, 49)])
    for n in range(2, 13):
        vals = odd_even_cube_gap(a_grid[:, None], x_grid[None, :], n)
        assert np.all(vals < 0.0), n

    for n in range(2, 13):
        assert series_coeffs(n, 200).b.max() <= 0.0, n
    for n in range(2, 9):
        sc = series_coeffs(n, 512, radius=0.5)
        err = abs(sc.partial_sum(0.5) - odd_even_sqrt_gap(0.5, n))
        assert err <= sc.tail_bound + 5e-13, n  # analytic tail + float slack

    elapsed = time.time() - t0
    assert elapsed < 30.0
    report(6, f"kernel-gap signs and series nonpositivity, zero violations ({elapsed:.2f}s)")


def test_criterion_7_double_count_nonexistence():
    t0 = time.time()
    for n in range(2, 9):
        cert = nonexistence_certificate(n, draws=10_000, seed=0)
        scan = cert["system_scan"]
        assert scan["min_max_residual"] >= 1e-3, (n, scan["min_max_residual"])
        assert scan["polished_min"] >= 1e-3, (n, scan["polished_min"])
        assert not scan["polish"]["converged_to_zero"]
        assert cert["random_refutation"]["min_max_residual"] > 1e-4, n
        assert cert["vertical_witness"]["sign_ok"]
        assert cert["planar_witness"]["sign_ok"]
    elapsed = time.time() - t0
    assert elapsed < 120.0
    report(7, f"double-count system refuted, minima recorded, N=2..8 ({elapsed:.2f}s)")


def test_criterion_8_admissibility_table():
    t0 = time.time()
    inadmissible = []
    for n in range(2, 25):
        for l in range(n, 25):
            rep = admissible(n, l)
            assert (rep.verdict is not Verdict.INADMISSIBLE) == (l in (n, 2 * n))
            if rep.verdict is Verdict.INADMISSIBLE:
                inadmissible.append((n, l))

    rng = np.random.default_rng(11)
    picks = rng.choice(len(inadmissible), size=20, replace=False)
    for idx in picks:
        n, l = inadmissible[idx]
        a = float(rng.uniform(0.5, 2.0))
        h = float(rng.uniform(0.0, 2.0))
        scan = tangential_infeasibility_scan(n, l, a, h)
        assert scan["min_max_tangential"] > 1e-6, (n, l, a, h)
    elapsed = time.time() - t0
    assert elapsed < 60.0
    report(8, f"verdicts match L in {{N, 2N}}; float scans confirm 20 pairs ({elapsed:.2f}s)")


def test_criterion_9_large_ring_scans(tmp_path):
    t0 = time.time()
    b_grid = np.geomspace(0.01, 100.0, 40)
    for n in (100, 500):
        rows = existence_scan_b(n, 0.0, b_grid, a_starts=7, h_starts=7)
        bs = {row["b"] for row in rows}
        assert len(bs) == 40
        for row in rows:
            if row["root_index"] >= 0:
                assert row["converged"]  # solver only reports oracle-verified roots
        csv_text = scan_rows_to_csv(rows)
        lines = csv_text.strip().split("\n")
        assert lines[0] == "b,theta,root_index,a,h,residual_norm,converged"
        assert len(lines) == 1 + len(rows)
        (tmp_path / f"scan_{n}.csv").write_text(csv_text)
    elapsed = time.time() - t0
    assert elapsed < 300.0
    report(9, f"complete verified scans at N=100 and N=500, no boundary asserted ({elapsed:.2f}s)")


def test_criterion_10_property_suite(rng):
    t0 = time.time()

    # rotation invariance / scaling covariance / mass covariance
    for _ in range(40):
        k = int(rng.integers(3, 7))
        masses = rng.uniform(0.5, 1.5, k)
        ang = 2 * np.pi * np.arange(k) / k
        pos = np.column_stack([np.cos(ang), np.sin(ang), np.zeros(k)])
        pos += rng.uniform(-0.2, 0.2, (k, 3))
        sys_ = BodySystem(masses, pos, collision_tol=0.1)
        base = cc_residual(sys_)

        rot = rotation_matrix(rng.normal(size=3) + 1e-3, rng.uniform(0, 2 * np.pi))
        rotated = cc_residual(BodySystem(masses, pos @ rot.T, collision_tol=0.1))
        assert abs(base.max_residual_norm - rotated.max_residual_norm) < 1e-12

        s = float(rng.uniform(0.5, 2.0))
        scaled = cc_residual(
            BodySystem(masses, pos * s, collision_tol=0.05),
            tolerance=base.tolerance / s**2,
        )
        assert scaled.lam == pytest.approx(base.lam / s**3, rel=1e-11)
        assert scaled.is_central == base.is_central

        c = float(rng.uniform(0.2, 5.0))
        weighted = cc_residual(
            BodySystem(masses * c, pos, collision_tol=0.1),
            tolerance=base.tolerance * c,
        )
        assert weighted.lam == pytest.approx(base.lam * c, rel=1e-11)
        assert weighted.is_central == base.is_central

    # residual-vector / oracle equivalence over random draws, plus solved
    # configurations exercising the central branch
    checked = 0
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
        checked += 1
    assert checked >= 95

    for n in (2, 4, 7):
        h = equal_size_height(n, math.pi / n)
        params = TwistedPairParams(n, n, 1.0, 1.0, h, math.pi / n)
        assert residual_vector(params).max_abs() <= 1e-9
        assert cc_residual(centered_positions(params), tolerance=1e-8).is_central

    elapsed = time.time() - t0
    assert elapsed < 30.0
    report(10, f"invariance, covariance, and equivalence properties hold ({elapsed:.2f}s)")
