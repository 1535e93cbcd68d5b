"""Command-line front end: invariant sweeps, surface generation, ODE solving,
mesh export, and the one-shot property-verification suite.

Exit codes: 0 success, 1 verification failure, 2 input/domain error,
3 kernel numerical error, 4 solver termination failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import (DomainViolation, EmptyDomain, GeometryError,
                     LightlikeMeanCurvature, MinimalPoint, ResolutionError)
from .kernel import frame_invariants, invariants
from .meridians import (OdeProblem, OdeTarget, ParabolicCase, TerminationReason,
                        load_meridian_csv, minimal_meridian, parabolic_meridian,
                        save_meridian_csv, solve_ode)
from .rotational import (RotationalSurface, SurfaceKind, as_patch,
                         circle_meridian, closed_invariants_kKkappa, embed,
                         hyperbolic_meridian, line_meridian, power_law_meridian,
                         residual_flat, residual_flat_normal, residual_minimal)
from .verify import SCOPES, align_sign, run_verify

COLUMNS = ["u", "v", "E", "F", "G", "L", "M", "N", "k", "kappa", "K",
           "normH", "epsilon", "gamma1", "gamma2", "nu1", "nu2", "lambda",
           "mu", "beta1", "beta2", "point_class", "delta_k", "delta_kappa",
           "delta_K"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects key=value, got {item!r}")
        out[key.strip()] = float(val)
    return out


def _build_meridian(args):
    params = _parse_params(getattr(args, "param", None))
    name = args.meridian
    if name == "line":
        return line_meridian(params.get("a", 1.0), params.get("b", 0.0))
    if name == "power-law":
        return power_law_meridian(params.get("c", 1.0), args.alpha, args.beta)
    if name == "circle":
        return circle_meridian(params.get("a", 1.0))
    if name == "hyperbolic":
        return hyperbolic_meridian(params.get("a", 1.0))
    if name == "minimal":
        eps = int(params.get("eps", 1.0))
        return minimal_meridian(SurfaceKind(args.kind), args.alpha, args.beta,
                                params.get("A", 0.25), params.get("C", 0.0), eps)
    raise ValueError(f"unknown meridian preset {name!r}")


def _build_surface(args) -> RotationalSurface:
    kind = SurfaceKind(args.kind)
    if getattr(args, "meridian_file", None):
        meridian, _meta = load_meridian_csv(args.meridian_file)
    else:
        meridian = _build_meridian(args)
    return RotationalSurface(kind, args.alpha, args.beta, meridian)


def _grid(args):
    if args.u_count < 2 or args.v_count < 2:
        raise ValueError("grid counts must be >= 2")
    us = np.linspace(args.u_min, args.u_max, args.u_count)
    vs = np.linspace(args.v_min, args.v_max, args.v_count)
    return us, vs


def run_sweep(surface: RotationalSurface, us, vs, tol: float,
              fd_step: float | None = None, h_frame: float = 1e-4):
    """One row dict per grid point, row-major over (u, v).

    Frame-invariant columns are NaN at points where the geometric frame is
    undefined (minimal or lightlike mean curvature).  The dual-path delta
    for kappa aligns the one global frame sign per sweep before comparing.
    """
    from .rotational import _checked_profile

    for u in us:                       # validate the whole range up front
        _checked_profile(surface, float(u))

    pad = 10.0 * h_frame
    patch = as_patch(surface,
                     u_range=(min(us) - pad, max(us) + pad),
                     v_range=(min(vs) - pad, max(vs) + pad))
    if fd_step is not None:
        patch = patch.with_finite_differences(fd_step)
    rows = []
    for u in us:
        kc, kapc, Kc = closed_invariants_kKkappa(surface, float(u))
        for v in vs:
            rep = invariants(patch, float(u), float(v), tol)
            try:
                fr = frame_invariants(patch, float(u), float(v), tol, h_frame)
                frame_vals = fr.as_tuple()
            except (MinimalPoint, LightlikeMeanCurvature):
                frame_vals = (math.nan,) * 8
            row = {
                "u": float(u), "v": float(v),
                "E": rep.first.E, "F": rep.first.F, "G": rep.first.G,
                "L": rep.second.L, "M": rep.second.M, "N": rep.second.N,
                "k": rep.k, "kappa": rep.kappa, "K": rep.K,
                "normH": rep.normH, "epsilon": rep.epsilon,
                "gamma1": frame_vals[0], "gamma2": frame_vals[1],
                "nu1": frame_vals[2], "nu2": frame_vals[3],
                "lambda": frame_vals[4], "mu": frame_vals[5],
                "beta1": frame_vals[6], "beta2": frame_vals[7],
                "point_class": rep.point_class.value,
                "delta_k": abs(kc - rep.k),
                "delta_K": abs(Kc - rep.K),
                "_kappa_closed": kapc,
            }
            rows.append(row)
    sign = align_sign([r["_kappa_closed"] for r in rows],
                      [r["kappa"] for r in rows])
    for r in rows:
        r["delta_kappa"] = abs(sign * r.pop("_kappa_closed") - r["kappa"])
    return rows


def _write_rows(rows, fmt: str, out: str) -> None:
    if fmt == "csv":
        lines = [",".join(COLUMNS)]
        for r in rows:
            lines.append(",".join(_fmt(r[c]) for c in COLUMNS))
        text = "\n".join(lines) + "\n"
    else:
        payload = {}
        for c in COLUMNS:
            vals = [r[c] for r in rows]
            if c in ("point_class",):
                payload[c] = vals
            elif c == "epsilon":
                payload[c] = [None if v is None else int(v) for v in vals]
            else:
                payload[c] = [None if (isinstance(v, float) and math.isnan(v))
                              else float(v) for v in vals]
        text = json.dumps(payload) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_invariants(args) -> int:
    surface = _build_surface(args)
    us, vs = _grid(args)
    rows = run_sweep(surface, us, vs, args.tol,
                     fd_step=args.fd_step if args.fd else None,
                     h_frame=args.h_frame)
    _write_rows(rows, args.format, args.out)
    return 0


def cmd_export_mesh(args) -> int:
    if args.drop_axis not in (1, 2, 3, 4):
        raise ValueError(f"--drop-axis must be 1..4, got {args.drop_axis}")
    surface = _build_surface(args)
    us, vs = _grid(args)
    rows = run_sweep(surface, us, vs, args.tol)
    vertices4 = []
    for u in us:
        for v in vs:
            z = embed(surface, float(u), float(v))
            vertices4.append([z.x1, z.x2, z.x3, z.x4])
    keep = [i for i in range(4) if i != args.drop_axis - 1]
    vertices3 = [[p[i] for i in keep] for p in vertices4]
    nv = len(vs)
    faces = []
    for i in range(len(us) - 1):
        for j in range(nv - 1):
            a = i * nv + j
            faces.append([a, a + nv, a + nv + 1, a + 1])
    mesh = {
        "vertices4": vertices4,
        "projection": {"mode": "drop-axis", "axis": args.drop_axis},
        "vertices3": vertices3,
        "faces": faces,
        "channels": {
            "k": [r["k"] for r in rows],
            "kappa": [r["kappa"] for r in rows],
            "K": [r["K"] for r in rows],
            "class": [r["point_class"] for r in rows],
        },
    }
    text = json.dumps(mesh) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _residual_stats(surface, fun, us):
    vals = np.array([abs(fun(surface, float(u))) for u in us])
    return float(vals.max()), float(vals.mean())


def cmd_generate(args) -> int:
    kind = SurfaceKind(args.kind)
    report = {"family": args.family, "kind": args.kind,
              "alpha": args.alpha, "beta": args.beta, "out": args.out}
    meta = {"kind": args.kind, "alpha": args.alpha, "beta": args.beta,
            "family": args.family}

    if args.family in ("flat", "flat-normal"):
        target = OdeTarget(args.family)
        problem = OdeProblem(kind, target, args.alpha, args.beta,
                             u0=args.u0, f0=args.f0, fp0=args.fp0,
                             u_stop=args.u_stop, rel_tol=args.rel_tol,
                             abs_tol=args.abs_tol, h_init=args.h_init,
                             h_max=args.h_max, guard_tol=args.guard_tol)
        sol = solve_ode(problem)
        report["termination"] = sol.termination.value
        report["detail"] = sol.detail
        failed = sol.termination is not TerminationReason.REACHED_BOUNDARY
        report["failure"] = failed
        meta["termination"] = sol.termination.value
        try:
            m = sol.to_meridian()
            surface = RotationalSurface(kind, args.alpha, args.beta, m)
            fun = residual_flat if target is OdeTarget.FLAT else residual_flat_normal
            rmax, rmean = _residual_stats(surface, fun, m.nodes[2:-2])
            report["residual_max"] = rmax
            report["residual_mean"] = rmean
            report["nodes"] = int(m.nodes.size)
            us = m.nodes
            save_meridian_csv(args.out, us, [m.f(float(u)) for u in us],
                              [m.fp(float(u)) for u in us], meta=meta)
        except ResolutionError as exc:
            # partial raw trajectory, marked: may not reload as a meridian
            meta["failure"] = "unresolvable-grid"
            save_meridian_csv(args.out, sol.us, sol.fs, sol.fps, meta=meta)
            report["failure"] = True
            report["detail"] += f"; {exc}"
        print(json.dumps(report))
        return 4 if report["failure"] else 0

    if args.family == "minimal":
        m = minimal_meridian(kind, args.alpha, args.beta, args.A, args.C,
                             args.eps)
        meta.update(A=args.A, C=args.C, eps=args.eps)
        resfun = residual_minimal
    elif args.family == "parabolic":
        case = ParabolicCase(args.case)
        m = parabolic_meridian(kind, case, alpha=args.alpha, beta=args.beta,
                               a=args.a, b=args.b, c=args.c)
        meta.update(case=args.case)
        resfun = None                  # report |k| instead
    elif args.family == "example1":
        m = circle_meridian(args.a)
        kind = SurfaceKind.FIRST
        meta.update(a=args.a, kind="first")
        resfun = residual_flat_normal
    elif args.family == "example2":
        m = hyperbolic_meridian(args.a)
        kind = SurfaceKind.SECOND
        meta.update(a=args.a, kind="second")
        resfun = residual_flat_normal
    else:
        raise ValueError(f"unknown family {args.family!r}")

    surface = RotationalSurface(kind, args.alpha, args.beta, m)
    us = np.linspace(args.u_min, args.u_max, args.count)
    from .rotational import _checked_profile
    for u in us:
        _checked_profile(surface, float(u))
    if resfun is not None:
        rmax, rmean = _residual_stats(surface, resfun, us)
    else:
        ks = np.abs([closed_invariants_kKkappa(surface, float(u))[0] for u in us])
        rmax, rmean = float(ks.max()), float(ks.mean())
    report["residual_max"] = rmax
    report["residual_mean"] = rmean
    report["nodes"] = int(us.size)
    if args.family == "example1":
        worst = max(abs(_quadric_value(surface, float(u)) - args.a ** 2)
                    for u in us)
        report["membership_max_error"] = worst
    elif args.family == "example2":
        worst = max(abs(_quadric_value(surface, float(u)) + args.a ** 2)
                    for u in us)
        report["membership_max_error"] = worst
    save_meridian_csv(args.out, us,
                      [m.f(float(u)) for u in us], [m.fp(float(u)) for u in us],
                      gs=[m.g(float(u)) for u in us],
                      gps=[m.gp(float(u)) for u in us], meta=meta)
    report["failure"] = False
    print(json.dumps(report))
    return 0


def _quadric_value(surface: RotationalSurface, u: float, v: float = 0.4) -> float:
    from .minkowski import inner
    z = embed(surface, u, v)
    return inner(z, z)


def cmd_verify(args) -> int:
    results = run_verify(args.scope, args.seed)
    for r in results:
        print(r.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed (scope={args.scope}, "
          f"seed={args.seed})")
    return 0 if n_pass == len(results) else 1


def _add_surface_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["first", "second"], required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--meridian",
                   choices=["line", "power-law", "circle", "hyperbolic",
                            "minimal"],
                   help="meridian preset (or use --meridian-file)")
    p.add_argument("--meridian-file", help="sampled meridian CSV")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="preset parameter, repeatable")


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--u-min", type=float, required=True)
    p.add_argument("--u-max", type=float, required=True)
    p.add_argument("--u-count", type=int, default=10)
    p.add_argument("--v-min", type=float, default=0.0)
    p.add_argument("--v-max", type=float, default=math.pi)
    p.add_argument("--v-count", type=int, default=10)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10,
                   help="degeneracy tolerance (default 1e-10)")
    p.add_argument("--fd-step", type=float, default=1e-5,
                   help="finite-difference step for --fd mode")
    p.add_argument("--h-frame", type=float, default=1e-4,
                   help="frame-field derivative step")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default="-")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minksurf",
        description="Invariants of spacelike surfaces in Minkowski 4-space "
                    "and their general rotational families")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="pointwise invariant sweep on a grid")
    _add_surface_args(p)
    _add_grid_args(p)
    _add_common(p)
    p.add_argument("--fd", action="store_true",
                   help="derive partials from z by central differences")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("generate", help="generate a meridian of a special class")
    p.add_argument("family", choices=["minimal", "parabolic", "flat",
                                      "flat-normal", "example1", "example2"])
    p.add_argument("--kind", choices=["first", "second"], default="first")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--A", type=float, default=0.25)
    p.add_argument("--C", type=float, default=0.0)
    p.add_argument("--eps", type=int, choices=[1, -1], default=1)
    p.add_argument("--case", choices=[c.value for c in ParabolicCase],
                   default="power-law")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--u0", type=float, default=0.2)
    p.add_argument("--f0", type=float, default=1.0)
    p.add_argument("--fp0", type=float, default=0.1)
    p.add_argument("--u-stop", type=float, default=1.0)
    p.add_argument("--u-min", type=float, default=0.6)
    p.add_argument("--u-max", type=float, default=2.0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--h-init", type=float, default=1e-3)
    p.add_argument("--h-max", type=float, default=2e-3)
    p.add_argument("--guard-tol", type=float, default=1e-6)
    p.add_argument("--out", default="meridian.csv")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run the seeded property-check suite")
    p.add_argument("scope", nargs="?", default="all", choices=list(SCOPES))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-mesh", help="grid mesh with invariant channels")
    _add_surface_args(p)
    _add_grid_args(p)
    _add_common(p)
    p.add_argument("--drop-axis", type=int, required=True,
                   help="coordinate to drop for the 3D projection (1..4)")
    p.set_defaults(func=cmd_export_mesh)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainViolation, EmptyDomain, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"kernel error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
