"""Command-line front end; all file I/O lives here.

Subcommands: check, build, solve-planar, solve-spatial, height, scan,
lemma, certify, admissible. Twist angles are accepted as exact rational
multiples of pi ("1/3pi", "pi/3", "pi/N") or as raw radians; the rational
form is preserved exactly where exact arithmetic applies. Identical inputs
produce byte-identical artifacts.

Exit status: 0 success, 1 validation error, 2 computational anomaly (a
finding that would contradict a uniqueness or existence claim is surfaced
loudly with a structured report, never silently).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .admissible import admissible, nonexistence_certificate
from .errors import (
    BracketCountError,
    CollisionError,
    DegenerateError,
    NoRootInBracketError,
    PolyCCError,
    SingularityError,
)
from .nbody import cc_residual
from .polygons import TwistedPairParams, build, centered_positions
from .residuals import residual_vector
from .signsums import LEMMA_REPORTS, zero_angle_report
from .solve import (
    equal_size_height,
    existence_scan_b,
    scan_rows_to_csv,
    solve_planar,
    solve_spatial,
)

_ANGLE_RE = re.compile(
    r"^(?P<coef>-?\d+(?:/\d+)?|-?\d*\.\d+)?pi(?:/(?P<den>\d+))?$"
)


def parse_angle(text: str, n: int | None = None) -> tuple[Fraction | None, float]:
    """Parse an angle as (exact multiple of pi | None, radians).

    Accepts "0", "pi", "2pi", "pi/3", "1/3pi", "0.5pi", the symbolic "pi/N"
    (resolved against n), or a raw radian float.
    """
    s = text.strip().lower().replace(" ", "")
    if s in ("0", "-0"):
        return Fraction(0), 0.0
    if s == "pi/n":
        if n is None:
            raise ValueError("'pi/N' needs a ring count to resolve against")
        frac = Fraction(1, n)
        return frac, math.pi / n
    m = _ANGLE_RE.match(s)
    if m:
        coef_text = m.group("coef")
        if coef_text is None or coef_text in ("", "-"):
            coef = Fraction(1) if coef_text != "-" else Fraction(-1)
        elif "/" in coef_text:
            num, den = coef_text.split("/")
            coef = Fraction(int(num), int(den))
        elif "." in coef_text:
            coef = Fraction(coef_text)
        else:
            coef = Fraction(int(coef_text))
        if m.group("den"):
            coef /= int(m.group("den"))
        return coef, float(coef) * math.pi
    try:
        return None, float(s)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}") from None


@dataclass
class RunConfig:
    """Validated run description, from flags or a JSON config file."""

    command: str
    params: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "json"


def _params_from(p: dict) -> TwistedPairParams:
    required = ("N", "L", "a", "b", "h", "theta")
    missing = [k for k in required if k not in p]
    if missing:
        raise ValueError(f"missing parameter(s): {', '.join(missing)}")
    theta = p["theta"]
    if isinstance(theta, str):
        _, theta = parse_angle(theta, n=int(p["N"]))
    return TwistedPairParams(
        N=int(p["N"]),
        L=int(p["L"]),
        a=float(p["a"]),
        b=float(p["b"]),
        h=float(p["h"]),
        theta=float(theta),
        m=float(p.get("m", 1.0)),
    )


def _twist_from(p: dict) -> float:
    n = int(p["N"])
    theta = p.get("theta", "0")
    if isinstance(theta, str):
        frac, rad = parse_angle(theta, n=n)
    else:
        frac, rad = None, float(theta)
    return rad


def _cmd_check(cfg: RunConfig) -> dict:
    params = _params_from(cfg.params)
    tol = float(cfg.tolerances.get("centrality", 1e-10))
    rv = residual_vector(params)
    report = cc_residual(centered_positions(params), tolerance=tol)
    theta_raw = cfg.params.get("theta")
    theta_exact = None
    if isinstance(theta_raw, str):
        frac, _ = parse_angle(theta_raw, n=params.N)
        if frac is not None:
            frac %= 2
            theta_exact = f"{frac.numerator}/{frac.denominator} pi"
    return {
        "command": "check",
        "params": params.to_dict(),
        "theta_exact": theta_exact,
        "residual_vector": rv.to_dict(),
        "oracle": report.to_dict() | {"per_body_residual": None},
        "is_central": report.is_central,
    }


def _cmd_build(cfg: RunConfig) -> dict:
    params = _params_from(cfg.params)
    centered = bool(cfg.params.get("centered", False))
    sys_ = centered_positions(params) if centered else build(params)
    return {
        "command": "build",
        "params": params.to_dict(),
        "centered": centered,
        "system": sys_.to_dict(),
    }


def _cmd_solve_planar(cfg: RunConfig) -> dict:
    n = int(cfg.params["N"])
    b = float(cfg.params["b"])
    twist = _twist_from(cfg.params)
    results = solve_planar(n, b, twist, grid=int(cfg.grids.get("a_points", 800)))
    return {
        "command": "solve-planar",
        "N": n,
        "b": b,
        "theta": twist,
        "count": len(results),
        "near_equal_size": [
            r.params.a for r in results if abs(r.params.a - 1.0) < 1e-6
        ],
        "results": [r.to_dict() for r in results],
    }


def _cmd_solve_spatial(cfg: RunConfig) -> dict:
    n = int(cfg.params["N"])
    b = float(cfg.params["b"])
    twist = _twist_from(cfg.params)
    results = solve_spatial(
        n,
        b,
        twist,
        a_starts=int(cfg.grids.get("a_starts", 25)),
        h_starts=int(cfg.grids.get("h_starts", 25)),
    )
    return {
        "command": "solve-spatial",
        "N": n,
        "b": b,
        "theta": twist,
        "count": len(results),
        "results": [r.to_dict() for r in results],
        "scan": {
            "a_starts": int(cfg.grids.get("a_starts", 25)),
            "h_starts": int(cfg.grids.get("h_starts", 25)),
            "a_range": [0.2, 5.0],
            "h_range": [0.1, 5.0],
        },
    }


def _cmd_height(cfg: RunConfig) -> dict:
    n = int(cfg.params["N"])
    twist = _twist_from(cfg.params)
    h = equal_size_height(n, twist)
    params = TwistedPairParams(N=n, L=n, a=1.0, b=1.0, h=h, theta=twist)
    report = cc_residual(centered_positions(params), tolerance=1e-8)
    return {
        "command": "height",
        "N": n,
        "theta": twist,
        "h": h,
        "lambda": report.lam,
        "oracle_max_residual": report.max_residual_norm,
        "is_central": report.is_central,
    }


def _cmd_scan(cfg: RunConfig):
    n = int(cfg.params["N"])
    twist = _twist_from(cfg.params)
    g = cfg.grids
    b_min = float(g.get("b_min", 0.01))
    b_max = float(g.get("b_max", 100.0))
    b_points = int(g.get("b_points", 40))
    log = bool(g.get("log", True))
    if "b_values" in g:
        b_grid = [float(v) for v in g["b_values"]]
    elif log:
        b_grid = np.geomspace(b_min, b_max, b_points).tolist()
    else:
        b_grid = np.linspace(b_min, b_max, b_points).tolist()
    rows = existence_scan_b(
        n,
        twist,
        b_grid,
        a_starts=int(g.get("a_starts", 7)),
        h_starts=int(g.get("h_starts", 7)),
    )
    if cfg.format == "csv":
        return scan_rows_to_csv(rows)
    return {"command": "scan", "N": n, "theta": twist, "rows": rows}


def _cmd_lemma(cfg: RunConfig) -> dict:
    name = cfg.params.get("name")
    if name == "zero-angles":
        return zero_angle_report(
            int(cfg.params["N"]),
            float(cfg.params.get("a", 1.0)),
            float(cfg.params.get("h", 1.0)),
            int(cfg.grids.get("theta_points", 0)),
        )
    if name not in LEMMA_REPORTS:
        known = sorted([*LEMMA_REPORTS, "zero-angles"])
        raise ValueError(f"unknown lemma check {name!r}; choose from {known}")
    return LEMMA_REPORTS[name]()


def _cmd_certify(cfg: RunConfig) -> dict:
    n = int(cfg.params["N"])
    return nonexistence_certificate(
        n,
        draws=int(cfg.grids.get("draws", 10_000)),
        seed=int(cfg.grids.get("seed", 0)),
    )


def _cmd_admissible(cfg: RunConfig) -> dict:
    report = admissible(int(cfg.params["N"]), int(cfg.params["L"]))
    return report.to_dict()


_HANDLERS = {
    "check": _cmd_check,
    "build": _cmd_build,
    "solve-planar": _cmd_solve_planar,
    "solve-spatial": _cmd_solve_spatial,
    "height": _cmd_height,
    "scan": _cmd_scan,
    "lemma": _cmd_lemma,
    "certify": _cmd_certify,
    "admissible": _cmd_admissible,
}

_ANOMALIES = (BracketCountError, NoRootInBracketError, DegenerateError, SingularityError)


def run(cfg: RunConfig) -> int:
    """Execute a validated config; write the artifact; return the exit code."""
    if cfg.command not in _HANDLERS:
        _emit({"error": "validation", "message": f"unknown command {cfg.command!r}"}, cfg)
        return 1
    try:
        artifact = _HANDLERS[cfg.command](cfg)
    except _ANOMALIES as exc:
        report = {
            "error": "anomaly",
            "type": type(exc).__name__,
            "message": str(exc),
            "command": cfg.command,
        }
        if isinstance(exc, BracketCountError):
            report["count"] = exc.count
            report["brackets"] = exc.brackets
        if isinstance(exc, NoRootInBracketError):
            report["scan"] = exc.scan
        _emit(report, cfg)
        return 2
    except (ValueError, KeyError, CollisionError, PolyCCError) as exc:
        _emit({"error": "validation", "type": type(exc).__name__, "message": str(exc)}, cfg)
        return 1
    _emit(artifact, cfg)
    return 0


def _emit(artifact, cfg: RunConfig) -> None:
    if isinstance(artifact, str):
        text = artifact
    else:
        text = json.dumps(artifact, indent=2, sort_keys=True) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycc",
        description="Build, check, solve, and certify stacked twisted-polygon "
        "central configurations.",
    )
    parser.add_argument("--config", help="JSON file mirroring the run configuration")
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("-o", "--output", help="artifact path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("check", help="evaluate the balance conditions and the oracle")
    for flag, typ in (("--N", int), ("--L", int), ("--a", float), ("--b", float),
                      ("--h", float)):
        p.add_argument(flag, type=typ, required=True)
    p.add_argument("--theta", required=True, help="e.g. 0, pi/3, 1/3pi, pi/N, or radians")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--tolerance", type=float, default=1e-10)
    add_common(p)

    p = sub.add_parser("build", help="emit the body system for a parameter tuple")
    for flag, typ in (("--N", int), ("--L", int), ("--a", float), ("--b", float),
                      ("--h", float)):
        p.add_argument(flag, type=typ, required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--centered", action="store_true")
    add_common(p)

    p = sub.add_parser("solve-planar", help="coplanar roots for a mass ratio")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--theta", default="0")
    p.add_argument("--a-points", type=int, default=800)
    add_common(p)

    p = sub.add_parser("solve-spatial", help="stacked roots for a mass ratio")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--theta", default="0")
    p.add_argument("--a-starts", type=int, default=25)
    p.add_argument("--h-starts", type=int, default=25)
    add_common(p)

    p = sub.add_parser("height", help="unique equal-size stack height")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--theta", default="0")
    add_common(p)

    p = sub.add_parser("scan", help="existence scan over the mass ratio")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--theta", default="0")
    p.add_argument("--b-min", type=float, default=0.01)
    p.add_argument("--b-max", type=float, default=100.0)
    p.add_argument("--b-points", type=int, default=40)
    p.add_argument("--linear", action="store_true", help="linear b grid (default log)")
    p.add_argument("--a-starts", type=int, default=7)
    p.add_argument("--h-starts", type=int, default=7)
    add_common(p)

    p = sub.add_parser("lemma", help="run a named sign-check report")
    p.add_argument("--name", required=True,
                   choices=sorted([*LEMMA_REPORTS, "zero-angles"]))
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--theta-points", type=int, default=0)
    add_common(p)

    p = sub.add_parser("certify", help="nonexistence certificate for L = 2N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--draws", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    p = sub.add_parser("admissible", help="exact ring-count admissibility verdict")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    add_common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    params: dict = {}
    grids: dict = {}
    tolerances: dict = {}
    for key in ("N", "L", "a", "b", "h", "theta", "m", "name"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if getattr(args, "centered", False):
        params["centered"] = True
    if getattr(args, "tolerance", None) is not None:
        tolerances["centrality"] = args.tolerance
    for key, dest in (
        ("a_points", "a_points"),
        ("a_starts", "a_starts"),
        ("h_starts", "h_starts"),
        ("b_min", "b_min"),
        ("b_max", "b_max"),
        ("b_points", "b_points"),
        ("draws", "draws"),
        ("seed", "seed"),
        ("theta_points", "theta_points"),
    ):
        val = getattr(args, key, None)
        if val is not None:
            grids[dest] = val
    if getattr(args, "linear", False):
        grids["log"] = False
    return RunConfig(
        command=args.command,
        params=params,
        grids=grids,
        tolerances=tolerances,
        output_path=getattr(args, "output", None),
        format=getattr(args, "format", "json"),
    )


def _config_from_file(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "command" not in data:
        raise ValueError("config file must name a command")
    return RunConfig(
        command=data["command"],
        params=data.get("params", {}),
        grids=data.get("grids", {}),
        tolerances=data.get("tolerances", {}),
        output_path=data.get("output_path"),
        format=data.get("format", "json"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            cfg = _config_from_file(args.config)
        elif args.command:
            cfg = _config_from_args(args)
        else:
            parser.print_help()
            return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"polycc: {exc}\n")
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
