"""Command-line front end.

One subcommand per capability, JSON on stdout, files only where the
subcommand exists to write them (portrait).  Output formatting is pinned
down hard: floats always carry 9 significant digits, object keys have a
fixed order, and the same invocation produces byte-identical output on any
machine and any --workers value.  That is why this module has its own tiny
JSON emitter instead of json.dumps (repr-based float formatting would tie
the output to CPython's shortest-roundtrip algorithm).

Exit codes: 0 success, 2 flag or domain validation, 3 numerical failure,
1 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .analysis import (closed_form_rho, growth_points, quantization_audit,
                       scan_scalar_distance)
from .flow import IntegrationError, lift_field, poincare_matrix, rotation_number
from .heun import (NoSolution, OneParameterFamily, che_coefficients,
                   che_equivalence_residual, che_solve_diagonal,
                   ghe_coefficients, ghe_equivalence_residual,
                   ghe_solve_diagonal)
from .params import CheSystemParams, GheSystemParams, TorusParams
from .portrait import sweep, write_csv, write_pgm
from .rng import SplitMix64
from .su11 import AccuracyError, classify, scalar_distance


def _jdump(obj) -> str:
    """Deterministic JSON: %.9g floats, insertion-ordered keys, NaN -> null."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return "null"
        return "%.9g" % obj
    if isinstance(obj, complex):
        return _jdump({"re": obj.real, "im": obj.imag})
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return '"%s"' % escaped
    if isinstance(obj, dict):
        items = ("%s:%s" % (_jdump(str(k)), _jdump(v)) for k, v in obj.items())
        return "{%s}" % ",".join(items)
    if isinstance(obj, (list, tuple)):
        return "[%s]" % ",".join(_jdump(v) for v in obj)
    raise TypeError(f"_jdump: cannot serialize {type(obj).__name__}")


def _pair(text: str, n: int, flag: str):
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"{flag}: expected {n} comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _torus(args) -> TorusParams:
    return TorusParams(omega=args.omega, delta=args.delta, D=args.bigd,
                       B=args.b, A=args.a)


def _cmd_rotnum(args) -> str:
    r = rotation_number(lift_field(_torus(args)), tol=args.rtol,
                        atol=args.atol)
    return _jdump({
        "rho": r.rho,
        "lyapunov": r.lyapunov,
        "class": r.map_class.kind.value,
        "winding_periods": r.winding_periods,
    })


def _cmd_portrait(args) -> str:
    workers = args.workers if args.workers is not None else os.cpu_count()
    grid = sweep(args.omega, args.delta, args.bigd,
                 (args.bmin, args.bmax, args.amin, args.amax),
                 args.nb, args.na, workers=workers, tol=args.rtol)
    write_csv(grid, args.out)
    if args.pgm is not None:
        clip = _pair(args.clip, 2, "--clip")
        write_pgm(grid, args.channel, args.pgm, clip)
    return _jdump({
        "out": args.out,
        "cells": args.nb * args.na,
        "failures": grid.meta["failures"],
    })


def _cmd_growth(args) -> str:
    pts = growth_points(args.omega, args.delta, args.nmax)
    return _jdump([{"n": p.n, "B": p.B} for p in pts])


def _cmd_closed_form(args) -> str:
    return _jdump({"rho": closed_form_rho(args.omega, args.delta, args.b)})


def _cmd_scan(args) -> str:
    rep = scan_scalar_distance(args.omega, args.delta, args.bigd, args.b,
                               (args.amin, args.amax), args.na,
                               threshold=args.threshold, tol=args.rtol)
    return _jdump({
        "samples": [{"B": b, "A": a, "d": d} for b, a, d in rep.samples],
        "minima": [{"A": m.A, "d": m.d, "refined": m.refined,
                    "candidate": m.d < rep.threshold} for m in rep.minima],
        "threshold": rep.threshold,
    })


def _cmd_heun_ghe(args) -> str:
    nu = complex(args.nu_re, args.nu_im)
    sign = 1 if args.root == "+" else -1
    phi, psi = ghe_solve_diagonal(args.alpha, args.b, args.c, nu,
                                  root_sign=sign, psi_branch=args.branch)
    p = GheSystemParams(alpha=args.alpha, b=args.b, c=args.c, nu=nu,
                        phi=phi, psi=psi)
    h = ghe_coefficients(p)
    out = {"alpha": h.alpha, "p": h.p, "q": h.q, "s": h.s, "u": h.u, "d": h.d}
    if args.verify:
        out["residual"] = ghe_equivalence_residual(p, h)
    return _jdump(out)


def _cmd_heun_che(args) -> str:
    nu = complex(args.nu_re, args.nu_im)
    sign = 1 if args.root == "+" else -1
    sol = che_solve_diagonal(args.b, args.g, nu, root_sign=sign)
    if isinstance(sol, NoSolution):
        return _jdump({"case": "no-solution"})
    if isinstance(sol, OneParameterFamily):
        return _jdump({"case": "one-parameter-family", "a2": sol.a2})
    a1, a2 = sol
    p = CheSystemParams(b=args.b, g=args.g, nu=nu, a1=a1, a2=a2)
    h = che_coefficients(p)
    out = {"p": h.p, "q": h.q, "s": h.s, "u": h.u, "d": h.d}
    if args.verify:
        out["residual"] = che_equivalence_residual(p, h)
    return _jdump(out)


def _cmd_monodromy(args) -> str:
    m = poincare_matrix(lift_field(_torus(args)), tol=args.rtol,
                        atol=args.atol)
    mat = m.matrix
    return _jdump({
        "matrix": {
            "m11": mat[0, 0], "m12": mat[0, 1],
            "m21": mat[1, 0], "m22": mat[1, 1],
        },
        "scalar_distance": scalar_distance(m),
        "class": classify(m).kind.value,
    })


def _cmd_audit(args) -> str:
    bmin, bmax, amin, amax = _pair(args.rect, 4, "--rect")
    rng = SplitMix64(args.seed)
    samples = []
    for _ in range(args.samples):
        b = rng.uniform(bmin, bmax)
        a = rng.uniform(amin, amax)
        samples.append(TorusParams(omega=args.omega, delta=args.delta,
                                   D=args.bigd, B=b, A=a))
    rep = quantization_audit(samples, tol=args.rtol)
    return _jdump({
        "samples": rep.n_samples,
        "locked": rep.n_locked,
        "violations": [{
            "B": v.params.B, "A": v.params.A, "rho": v.rho,
            "lyapunov": v.lyapunov, "dist": v.dist, "reason": v.reason,
        } for v in rep.violations],
        "max_det_defect": rep.max_det_defect,
        "seed": args.seed,
    })


def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--atol", type=float, default=1e-10)


def _add_field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--bigd", type=float, default=0.0,
                   help="the drift parameter D")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="phaselock",
        description="Rotation numbers, phase-lock portraits and Heun-type "
                    "reductions of cosine torus flows.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rotnum", help="rotation number at one point")
    _add_field_flags(p)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    _add_tol_flags(p)
    p.set_defaults(handler=_cmd_rotnum)

    p = sub.add_parser("portrait", help="raster sweep to CSV (and PGM)")
    _add_field_flags(p)
    p.add_argument("--bmin", type=float, required=True)
    p.add_argument("--bmax", type=float, required=True)
    p.add_argument("--amin", type=float, required=True)
    p.add_argument("--amax", type=float, required=True)
    p.add_argument("--nb", type=int, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--pgm", default=None, help="optional PGM output path")
    p.add_argument("--channel", choices=["rho", "lyapunov"], default="rho")
    p.add_argument("--clip", default="0,3", help="lo,hi for the PGM scale")
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: all CPUs)")
    _add_tol_flags(p)
    p.set_defaults(handler=_cmd_portrait)

    p = sub.add_parser("growth", help="growth points on the A=0 axis")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(handler=_cmd_growth)

    p = sub.add_parser("closed-form", help="exact rho at A=D=0")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(handler=_cmd_closed_form)

    p = sub.add_parser("scan", help="scalar-distance profile along vertical line")
    _add_field_flags(p)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--amin", type=float, required=True)
    p.add_argument("--amax", type=float, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--threshold", type=float, default=1e-2)
    _add_tol_flags(p)
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("heun", help="Heun coefficient builders")
    hsub = p.add_subparsers(dest="family", required=True)

    q = hsub.add_parser("ghe", help="general Heun from the Fuchsian chart")
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--b", type=float, required=True)
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--nu-re", type=float, required=True)
    q.add_argument("--nu-im", type=float, required=True)
    q.add_argument("--root", choices=["+", "-"], default="+")
    q.add_argument("--branch", choices=["conj", "complement"], default="conj")
    q.add_argument("--verify", action="store_true")
    q.set_defaults(handler=_cmd_heun_ghe)

    q = hsub.add_parser("che", help="confluent Heun from the confluent chart")
    q.add_argument("--b", type=float, required=True)
    q.add_argument("--g", type=float, required=True)
    q.add_argument("--nu-re", type=float, required=True)
    q.add_argument("--nu-im", type=float, required=True)
    q.add_argument("--root", choices=["+", "-"], default="+")
    q.add_argument("--verify", action="store_true")
    q.set_defaults(handler=_cmd_heun_che)

    p = sub.add_parser("monodromy", help="Poincare matrix and scalar distance")
    _add_field_flags(p)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    _add_tol_flags(p)
    p.set_defaults(handler=_cmd_monodromy)

    p = sub.add_parser("audit-quantization",
                       help="seeded random check of the quantization property")
    _add_field_flags(p)
    p.add_argument("--rect", required=True, help="bmin,bmax,amin,amax")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_tol_flags(p)
    p.set_defaults(handler=_cmd_audit)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        out = args.handler(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (IntegrationError, AccuracyError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
