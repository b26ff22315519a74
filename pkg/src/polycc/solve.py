"""Root finding over the reduced equal-count systems.

Coplanar families are found by bracketing the linear-in-b relation on the
two reciprocal radius branches and bisecting; stacked families by damped-free
Newton in (a, h) from a multistart grid. Every root that claims convergence
is pushed back through the independent per-body oracle before being reported.
Root absence is data, not an error: scans record it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BracketCountError, NoRootInBracketError
from .nbody import cc_residual
from .numerics import bisect_root, map_indexed, newton_system, secant_polish, sign_change_brackets
from .polygons import TwistedPairParams, centered_positions
from .residuals import (
    residual_vector,
    self_interaction_constant,
    spatial_system,
    validate_twist,
)

TWO_PI = 2.0 * math.pi

#: oracle tolerance applied to every reported root
ORACLE_TOL = 1e-8
#: residual-system tolerance implied by the converged flag
SYSTEM_TOL = 1e-10


class BranchTag(Enum):
    INNER_SMALLER = "inner_smaller"  # upper ring radius a < 1
    INNER_LARGER = "inner_larger"    # upper ring radius a > 1
    EQUAL_SIZE = "equal_size"        # a = 1


@dataclass(eq=False)
class SolveResult:
    """A solved parameter tuple with its verification record."""

    params: TwistedPairParams
    residual_norm: float
    lam: float
    iterations: int
    converged: bool
    branch_tag: BranchTag

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "residual_norm": self.residual_norm,
            "lambda": self.lam,
            "iterations": self.iterations,
            "converged": self.converged,
            "branch_tag": self.branch_tag.value,
        }


def _tag_for(a: float, tol: float = 1e-8) -> BranchTag:
    if abs(a - 1.0) <= tol:
        return BranchTag.EQUAL_SIZE
    return BranchTag.INNER_SMALLER if a < 1.0 else BranchTag.INNER_LARGER


def _verified_result(n, b, theta_choice, a, h, iterations) -> SolveResult:
    params = TwistedPairParams(N=n, L=n, a=a, b=b, h=h, theta=theta_choice)
    rv = residual_vector(params)
    report = cc_residual(centered_positions(params), tolerance=ORACLE_TOL)
    resid = rv.max_abs()
    return SolveResult(
        params=params,
        residual_norm=resid,
        lam=report.lam,
        iterations=iterations,
        converged=bool(resid <= SYSTEM_TOL and report.is_central),
        branch_tag=_tag_for(a),
    )


# ---------------------------------------------------------------------------
# coplanar (h = 0) families


def _planar_gap(n: int, b: float, theta_choice: float, a_values: np.ndarray) -> np.ndarray:
    """b * (S_dir(a) - A/a^3) - (S_inv(a) - A); linear in b, pole-free off a = 1."""
    const = self_interaction_constant(n)
    ang = TWO_PI * np.arange(1, n + 1) / n + theta_choice
    cos_ang = np.cos(ang)
    av = a_values[:, None]
    d = (1.0 + av**2 - 2.0 * av * cos_ang) ** -1.5
    s_dir = np.sum((1.0 - av * cos_ang) * d, axis=1)
    s_inv = np.sum((1.0 - cos_ang / av) * d, axis=1)
    return b * (s_dir - const / a_values**3) - (s_inv - const)


def solve_planar(
    n: int,
    b: float,
    theta_choice: float,
    grid: int = 800,
    a_min: float = 1e-3,
    xtol: float = 1e-12,
) -> list[SolveResult]:
    """All coplanar equal-count configurations with mass ratio b.

    Brackets the mass-ratio relation on a in (a_min, 1), and on the outer
    branch through the substitution a -> 1/a so no arbitrary upper cutoff is
    needed; each bracket is bisected to xtol and secant-polished. An exact
    a = 1 root (possible only for the interleaved twist) is checked
    explicitly. Raises NoRootInBracketError with the scan trace if nothing
    is found.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    theta_choice = validate_twist(n, theta_choice)
    if b <= 0.0:
        raise ValueError("mass ratio b must be positive")

    inner_hi = 1.0 - 1e-7
    avec = np.geomspace(a_min, inner_hi, grid)

    roots: list[tuple[float, int]] = []
    scan_trace = {}
    for branch in ("inner", "outer"):
        if branch == "inner":
            def f(u: float) -> float:
                return float(_planar_gap(n, b, theta_choice, np.array([u]))[0])
        else:
            def f(u: float) -> float:
                return float(_planar_gap(n, b, theta_choice, np.array([1.0 / u]))[0])

        values = np.array([f(u) for u in avec])
        scan_trace[branch] = {
            "grid": [float(avec[0]), float(avec[-1]), grid],
            "min_abs_value": float(np.min(np.abs(values))),
        }
        for i, j in sign_change_brackets(avec, values):
            u = bisect_root(f, avec[i], avec[j], flo=values[i], fhi=values[j], xtol=xtol)
            u = secant_polish(f, u - xtol, u + xtol)
            a_root = u if branch == "inner" else 1.0 / u
            iters = int(math.ceil(math.log2((avec[j] - avec[i]) / xtol))) + 2
            roots.append((a_root, iters))

    if theta_choice > 0.0:
        # interleaved twist: the relation extends continuously through a = 1
        gap_at_one = float(_planar_gap(n, b, theta_choice, np.array([1.0]))[0])
        if abs(gap_at_one) <= 1e-10:
            roots.append((1.0, 0))

    roots.sort(key=lambda t: t[0])
    deduped: list[tuple[float, int]] = []
    for a_root, iters in roots:
        if not deduped or abs(a_root - deduped[-1][0]) > 1e-10:
            deduped.append((a_root, iters))

    if not deduped:
        raise NoRootInBracketError(
            f"no coplanar root for N={n}, b={b}, twist={theta_choice!r}",
            scan=scan_trace,
        )
    return [
        _verified_result(n, b, theta_choice, a_root, 0.0, iters)
        for a_root, iters in deduped
    ]


# ---------------------------------------------------------------------------
# stacked (h > 0) families


def solve_spatial(
    n: int,
    b: float,
    theta_choice: float,
    a_starts: int = 25,
    h_starts: int = 25,
    a_range: tuple[float, float] = (0.2, 5.0),
    h_range: tuple[float, float] = (0.1, 5.0),
    dedup_tol: float = 1e-8,
    max_iter: int = 60,
) -> list[SolveResult]:
    """Stacked equal-count configurations with mass ratio b, oracle-verified.

    Newton in (a, h) with a central-difference Jacobian (relative step 1e-7)
    from an a_starts x h_starts grid of initial points. The system is even in
    h, so sign-flipped heights fold onto h > 0. An empty list is a finding
    (nonexistence regime), not an error.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    theta_choice = validate_twist(n, theta_choice)
    if b <= 0.0:
        raise ValueError("mass ratio b must be positive")

    scale = 1.0 + self_interaction_constant(n)
    tol = 1e-12 * scale
    lower = np.array([1e-4, -1e4])
    upper = np.array([1e4, 1e4])

    def system(x: np.ndarray) -> np.ndarray:
        return np.array(spatial_system(n, theta_choice, float(x[0]), b, abs(float(x[1]))))

    starts = [
        (a0, h0)
        for a0 in np.linspace(a_range[0], a_range[1], a_starts)
        for h0 in np.linspace(h_range[0], h_range[1], h_starts)
    ]

    def attempt(start):
        return newton_system(
            system,
            np.array(start),
            fd_step=1e-7,
            tol=tol,
            max_iter=max_iter,
            lower=lower,
            upper=upper,
        )

    raw = map_indexed(attempt, starts)

    found: list[tuple[float, float, int]] = []
    for x, resid, iters, ok in raw:
        if not ok:
            continue
        a_root, h_root = float(x[0]), abs(float(x[1]))
        if a_root <= 0.0 or h_root <= 1e-8:
            continue
        dup = any(
            math.hypot(a_root - fa, h_root - fh) <= dedup_tol for fa, fh, _ in found
        )
        if not dup:
            found.append((a_root, h_root, iters))

    found.sort(key=lambda t: (t[0], t[1]))
    results = [
        _verified_result(n, b, theta_choice, a_root, h_root, iters)
        for a_root, h_root, iters in found
    ]
    return [r for r in results if r.converged]


def equal_size_height(
    n: int,
    theta_choice: float,
    h_lo: float = 1e-4,
    h_hi: float = 1e3,
    grid: int = 400,
    xtol: float = 1e-12,
) -> float:
    """The unique stack height for equal rings and equal masses (a = b = 1).

    At a = b = 1 the two stacked-system equations coincide, leaving

        sum_j (1 + cos(ang_j + twist)) / (2 - 2 cos(ang_j + twist) + h^2)^(3/2) = A.

    The bracket is located on a log grid over (h_lo, h_hi); exactly one sign
    change must appear — any other count contradicts uniqueness and raises
    BracketCountError.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    theta_choice = validate_twist(n, theta_choice)
    const = self_interaction_constant(n)
    ang = TWO_PI * np.arange(1, n + 1) / n + theta_choice
    cos_ang = np.cos(ang)

    def gap(h: float) -> float:
        d = (2.0 - 2.0 * cos_ang + h * h) ** -1.5
        return float(np.sum((1.0 + cos_ang) * d)) - const

    hs = np.geomspace(h_lo, h_hi, grid)
    values = np.array([gap(h) for h in hs])
    brackets = sign_change_brackets(hs, values)
    if len(brackets) != 1:
        raise BracketCountError(
            f"expected exactly one height bracket for N={n}, "
            f"twist={theta_choice!r}; found {len(brackets)}",
            count=len(brackets),
            brackets=[[float(hs[i]), float(hs[j])] for i, j in brackets],
        )
    i, j = brackets[0]
    h_root = bisect_root(gap, hs[i], hs[j], flo=values[i], fhi=values[j], xtol=xtol)
    return secant_polish(gap, h_root - xtol, h_root + xtol)


# ---------------------------------------------------------------------------
# existence scans over the mass ratio


def existence_scan_b(
    n: int,
    theta_choice: float,
    b_grid,
    a_starts: int = 7,
    h_starts: int = 7,
    a_range: tuple[float, float] = (0.2, 5.0),
    h_range: tuple[float, float] = (0.1, 5.0),
) -> list[dict]:
    """Stacked-root census over a grid of mass ratios.

    For each b the rows record every oracle-verified root (or a single
    root_index = -1 row when none converged). Presence/absence boundaries in
    the output are empirical observations, not certified statements.
    """
    theta_choice = validate_twist(n, theta_choice)
    rows: list[dict] = []
    for b in b_grid:
        roots = solve_spatial(
            n,
            float(b),
            theta_choice,
            a_starts=a_starts,
            h_starts=h_starts,
            a_range=a_range,
            h_range=h_range,
        )
        if not roots:
            rows.append(
                {
                    "b": float(b),
                    "theta": theta_choice,
                    "root_index": -1,
                    "a": math.nan,
                    "h": math.nan,
                    "residual_norm": math.nan,
                    "converged": False,
                }
            )
            continue
        for idx, r in enumerate(roots):
            rows.append(
                {
                    "b": float(b),
                    "theta": theta_choice,
                    "root_index": idx,
                    "a": r.params.a,
                    "h": r.params.h,
                    "residual_norm": r.residual_norm,
                    "converged": r.converged,
                }
            )
    return rows


def scan_rows_to_csv(rows: list[dict]) -> str:
    """Render scan rows as CSV with 17-significant-digit floats."""
    def fmt(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return f"{v:.17g}"
        return str(v)

    header = "b,theta,root_index,a,h,residual_norm,converged"
    lines = [header]
    for row in rows:
        lines.append(
            ",".join(
                fmt(row[key])
                for key in ("b", "theta", "root_index", "a", "h", "residual_norm", "converged")
            )
        )
    return "\n".join(lines) + "\n"
