"""Meridian generators for the special surface classes.

Closed forms:

  * minimal meridians, as a graph g(f) (parameter u = f):

        g = (sqrt(A)/beta) * sin( eps (beta/alpha) ln|alpha f + r| + C ),
        r = sqrt(alpha^2 f^2 - A)   (first type,  needs alpha^2 f^2 > A)
        r = sqrt(alpha^2 f^2 + A)   (second type)

    with free constants A > 0, C and branch sign eps = +/-1;

  * the three parabolic (k = 0) families with f = u:
        g = a u   (developable ruled),
        g = a u + b   (non-developable ruled, b != 0),
        g = c u^(-beta^2/alpha^2)   (non-ruled power law).

Numerically integrated classes (meridian as a graph f(u), g = u):

  * flat surfaces (K = 0):
        first type:   (arctan f')' = a^2 b^2 (u f' - f)^2
                                     / ((a^2 f^2 - b^2 u^2)(a^2 f + b^2 u f'))
        second type:  (ln|(1+f')/(1-f')|)' = -2 a^2 b^2 (u f' - f)^2
                                     / ((a^2 f^2 + b^2 u^2)(a^2 f + b^2 u f'))
  * flat normal connection (kappa = 0):
        first type:   (arctan f')' = -(a^2 f + b^2 u f')/(a^2 f^2 - b^2 u^2)
        second type:  (ln|(1+f')/(1-f')|)' = 2 (a^2 f + b^2 u f')
                                             /(a^2 f^2 + b^2 u^2)

The solver integrates the substituted variable (arctan f' resp. the log
ratio) with an adaptive embedded Runge-Kutta 4(5) pair and converts blow-up
of any of the printed denominators into a reported termination instead of a
crash.  Acceptance of a generated curve always goes through the defining
residuals of `rotational`, never through solver-internal error estimates.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainViolation, EmptyDomain, NotMinimal
from .rotational import (MeridianCurve, Provenance, RotationalSurface,
                         SurfaceKind, closed_invariants_frame8,
                         first_form_coefficients, residual_minimal,
                         sampled_meridian)


# ---------------------------------------------------------------------------
# closed-form families

def minimal_meridian(kind: SurfaceKind, alpha: float, beta: float,
                     A: float, C: float, sign_eps: int,
                     f_range: Optional[tuple[float, float]] = None) -> MeridianCurve:
    """Meridian of a minimal surface of the given kind, as a graph over f.

    For the first type the admissible f-interval is alpha^2 f^2 > A (the
    profile automatically keeps beta^2 g^2 <= A); the positive branch
    f > sqrt(A)/alpha is used unless f_range selects elsewhere.  For the
    second type every f is admissible.  The |.| inside the logarithm and the
    branch sign eps are exposed, never auto-selected.
    """
    if A <= 0.0:
        raise ValueError("constant A must be positive")
    if sign_eps not in (1, -1):
        raise ValueError("sign_eps must be +1 or -1")
    al, be = float(alpha), float(beta)
    a2, sA = al * al, math.sqrt(A)
    shift = -A if kind is SurfaceKind.FIRST else A

    if kind is SurfaceKind.FIRST:
        lo, hi = sA / al, math.inf
    else:
        lo, hi = -math.inf, math.inf
    if f_range is not None:
        lo, hi = max(lo, f_range[0]), min(hi, f_range[1])
        if not lo < hi:
            raise EmptyDomain(
                f"no f-interval with alpha^2 f^2 > A inside {f_range} "
                f"(A={A}, alpha={alpha})")

    def _r2(f):
        return a2 * f * f + shift

    def g(f):
        r = math.sqrt(_r2(f))
        phi = sign_eps * (be / al) * math.log(abs(al * f + r)) + C
        return (sA / be) * math.sin(phi)

    def gp(f):
        r = math.sqrt(_r2(f))
        phi = sign_eps * (be / al) * math.log(abs(al * f + r)) + C
        return sign_eps * sA * math.cos(phi) / r

    def gpp(f):
        r2 = _r2(f)
        return -(be * be * g(f) + a2 * f * gp(f)) / r2

    prov = Provenance("preset", "minimal",
                      {"kind": kind.value, "alpha": al, "beta": be,
                       "A": A, "C": C, "eps": sign_eps})
    return MeridianCurve(f=lambda u: u, fp=lambda u: 1.0, fpp=lambda u: 0.0,
                         g=g, gp=gp, gpp=gpp, domain=(lo, hi), provenance=prov)


class ParabolicCase(enum.Enum):
    DEVELOPABLE_RULED = "developable"
    NON_DEVELOPABLE_RULED = "non-developable"
    POWER_LAW = "power-law"


def parabolic_meridian(kind: SurfaceKind, case: ParabolicCase, *,
                       alpha: float, beta: float,
                       a: Optional[float] = None, b: Optional[float] = None,
                       c: Optional[float] = None) -> MeridianCurve:
    """Meridian whose swept surface consists of parabolic points (k = 0)."""
    al, be = float(alpha), float(beta)
    if case is ParabolicCase.DEVELOPABLE_RULED:
        if not a:
            raise ValueError("developable ruled case needs a != 0")
        if kind is SurfaceKind.FIRST and al * al - be * be * a * a <= 0.0:
            raise DomainViolation(
                f"g = a u admits no first-type domain for |a| >= alpha/beta "
                f"(a={a}, alpha={alpha}, beta={beta})")
        if kind is SurfaceKind.SECOND and abs(a) >= 1.0:
            raise DomainViolation("second type needs |a| < 1 for g = a u")
        m = _line(a, 0.0)
    elif case is ParabolicCase.NON_DEVELOPABLE_RULED:
        if not a or not b:
            raise ValueError("non-developable ruled case needs a != 0 and b != 0")
        if kind is SurfaceKind.SECOND and abs(a) >= 1.0:
            raise DomainViolation("second type needs |a| < 1 for g = a u + b")
        m = _line(a, b)
    elif case is ParabolicCase.POWER_LAW:
        if not c:
            raise ValueError("power-law case needs c != 0")
        from .rotational import power_law_meridian
        m = power_law_meridian(c, al, be)
    else:
        raise ValueError(f"unknown case {case!r}")
    return m


def _line(a: float, b: float) -> MeridianCurve:
    from .rotational import line_meridian
    return line_meridian(a, b)


# ---------------------------------------------------------------------------
# flat / flat-normal ODE solving

class OdeTarget(enum.Enum):
    FLAT = "flat"
    FLAT_NORMAL = "flat-normal"


class TerminationReason(enum.Enum):
    REACHED_BOUNDARY = "reached-boundary"
    SINGULARITY = "singularity"
    STEP_UNDERFLOW = "step-underflow"
    MAX_STEPS = "max-steps"


@dataclass(frozen=True)
class OdeProblem:
    """Initial value problem for a flat or flat-normal meridian f(u), g = u.

    h_max bounds the node spacing of the returned grid so that the cubic
    reconstruction of f'' stays well below the defining-residual tolerance.
    """

    kind: SurfaceKind
    target: OdeTarget
    alpha: float
    beta: float
    u0: float
    f0: float
    fp0: float
    u_stop: float
    h_init: float = 1e-3
    h_min: float = 1e-12
    h_max: float = 2e-3
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    guard_tol: float = 1e-6
    max_steps: int = 200_000

    @property
    def direction(self) -> int:
        return 1 if self.u_stop >= self.u0 else -1


@dataclass
class SolvedMeridian:
    """Trajectory {(u_i, f_i, f'_i)} with the reason integration stopped."""

    us: np.ndarray
    fs: np.ndarray
    fps: np.ndarray
    termination: TerminationReason
    detail: str
    problem: OdeProblem
    n_steps: int
    max_error_ratio: float

    def to_meridian(self, resolution_tol: float = 1e-6) -> MeridianCurve:
        """Spline curve over the resolvable part of the trajectory.

        When the march ended at a singularity the final nodes form a
        geometrically collapsing approach cluster; those are dropped (they
        carry no interpolation value), and the second-derivative
        certification inside sampled_meridian may clip a further sliver at
        the singular end where f'' is no longer reconstructible to
        resolution_tol."""
        us, fs, fps = self.us, self.fs, self.fps
        n = len(us)
        if self.termination is not TerminationReason.REACHED_BOUNDARY:
            thr = self.problem.h_max / 4.0
            while n > 6 and abs(us[n - 1] - us[n - 2]) < thr:
                n -= 1
        params = {"kind": self.problem.kind.value,
                  "target": self.problem.target.value,
                  "alpha": self.problem.alpha, "beta": self.problem.beta}
        return sampled_meridian(us[:n], fs[:n], fps[:n],
                                name=self.problem.target.value, params=params,
                                resolution_tol=resolution_tol, certify_d2=True)

    def to_surface(self, resolution_tol: float = 1e-6) -> RotationalSurface:
        return RotationalSurface(self.problem.kind, self.problem.alpha,
                                 self.problem.beta,
                                 self.to_meridian(resolution_tol))


class _GuardTrip(Exception):
    def __init__(self, name: str, value: float):
        super().__init__(f"{name} = {value:.3e}")
        self.name = name
        self.value = value


def _guard_values(p: OdeProblem, u: float, y) -> list[tuple[str, float]]:
    """Guarded denominators at a state; used to stop the march when one of
    them reaches (or silently crosses) zero between accepted nodes."""
    f, q = y
    al2, be2 = p.alpha ** 2, p.beta ** 2
    if p.kind is SurfaceKind.FIRST:
        w = math.tan(q)
        vals = [("alpha^2 f^2 - beta^2 u^2", al2 * f * f - be2 * u * u)]
    else:
        w = 1.0 / math.tanh(0.5 * q)
        vals = [("alpha^2 f^2 + beta^2 u^2", al2 * f * f + be2 * u * u),
                ("f'^2 - 1 (spacelike boundary)", w * w - 1.0)]
    if p.target is OdeTarget.FLAT:
        vals.append(("alpha^2 f + beta^2 u f'", al2 * f + be2 * u * w))
    return vals


def _make_rhs(p: OdeProblem):
    """Right-hand side in the substituted variable.

    First type: state (f, theta), theta = arctan f'.  Second type: state
    (f, rho), rho = ln|(1+f')/(1-f')| with f' = coth(rho/2) on the
    spacelike branch |f'| > 1.  Raises _GuardTrip when a printed denominator
    or the chart itself degenerates.
    """
    al2, be2 = p.alpha ** 2, p.beta ** 2
    ab2 = al2 * be2
    guard = p.guard_tol
    first = p.kind is SurfaceKind.FIRST
    flat = p.target is OdeTarget.FLAT

    def rhs(u, y):
        f, q = y
        if first:
            cq = math.cos(q)
            if abs(cq) < 1e-8:
                raise _GuardTrip("vertical tangent (|f'| -> inf)", cq)
            w = math.tan(q)
            G0 = al2 * f * f - be2 * u * u
            if abs(G0) < guard:
                raise _GuardTrip("alpha^2 f^2 - beta^2 u^2", G0)
        else:
            if abs(q) < 1e-12:
                raise _GuardTrip("vertical tangent (|f'| -> inf)", q)
            w = 1.0 / math.tanh(0.5 * q)
            if abs(w) > 1e8:
                raise _GuardTrip("vertical tangent (|f'| -> inf)", w)
            if abs(w * w - 1.0) < guard:
                raise _GuardTrip("f'^2 - 1 (spacelike boundary)", w * w - 1.0)
            G0 = al2 * f * f + be2 * u * u
            if abs(G0) < guard:
                raise _GuardTrip("alpha^2 f^2 + beta^2 u^2", G0)
        if flat:
            D = al2 * f + be2 * u * w
            if abs(D) < guard:
                raise _GuardTrip("alpha^2 f + beta^2 u f'", D)
            num = ab2 * (u * w - f) ** 2
            dq = num / (G0 * D) if first else -2.0 * num / (G0 * D)
        else:
            D = al2 * f + be2 * u * w
            dq = -D / G0 if first else 2.0 * D / G0
        return np.array([w, dq])

    return rhs


def _initial_state(p: OdeProblem) -> np.ndarray:
    if p.kind is SurfaceKind.FIRST:
        G0 = p.alpha ** 2 * p.f0 ** 2 - p.beta ** 2 * p.u0 ** 2
        if G0 <= p.guard_tol:
            raise DomainViolation(
                f"initial data violates alpha^2 f^2 - beta^2 u^2 > 0 (={G0:.3e})")
        q0 = math.atan(p.fp0)
    else:
        if p.fp0 ** 2 - 1.0 <= p.guard_tol:
            raise DomainViolation(
                f"second type needs |f'(u0)| > 1, got f'={p.fp0}")
        q0 = math.log(abs((1.0 + p.fp0) / (1.0 - p.fp0)))
    if p.target is OdeTarget.FLAT:
        D = p.alpha ** 2 * p.f0 + p.beta ** 2 * p.u0 * p.fp0
        if abs(D) <= p.guard_tol:
            raise DomainViolation(
                f"initial data sits on the singular set alpha^2 f + beta^2 u f' = 0 "
                f"(={D:.3e})")
    return np.array([p.f0, q0])


def _fp_of_state(p: OdeProblem, q: float) -> float:
    if p.kind is SurfaceKind.FIRST:
        return math.tan(q)
    return 1.0 / math.tanh(0.5 * q)


# Fehlberg 4(5) embedded pair; the 5th-order solution is propagated.
_FB_C = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
_FB_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_FB_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_FB_E = (1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55)


def _rk45_step(rhs, u, y, h):
    ks = []
    for i in range(6):
        yi = y.copy()
        for j, a in enumerate(_FB_A[i]):
            yi = yi + (h * a) * ks[j]
        ks.append(rhs(u + _FB_C[i] * h, yi))
    y5 = y.copy()
    err = np.zeros_like(y)
    for i in range(6):
        y5 = y5 + (h * _FB_B5[i]) * ks[i]
        err = err + (h * _FB_E[i]) * ks[i]
    return y5, err


def solve_ode(p: OdeProblem) -> SolvedMeridian:
    """Integrate the flat / flat-normal meridian ODE from (u0, f0, f0').

    Adaptive Fehlberg 4(5); step size is reduced on local-error rejection
    and on guard trips inside trial stages, so that approaching any printed
    denominator's zero ends in a reported SINGULARITY termination with the
    last valid node retained.  The error test is
    |err_i| <= abs_tol + rel_tol * |y_i| per component.
    """
    rhs = _make_rhs(p)
    y = _initial_state(p)
    u = p.u0
    direction = p.direction
    span = abs(p.u_stop - p.u0)
    if span <= 0.0:
        raise ValueError("u_stop must differ from u0")

    us = [u]
    fs = [y[0]]
    fps = [p.fp0]
    h = direction * min(abs(p.h_init), p.h_max, span)
    termination = TerminationReason.MAX_STEPS
    detail = f"step budget {p.max_steps} exhausted"
    worst_ratio = 0.0
    n_steps = 0
    prev_guards = _guard_values(p, u, y)

    while n_steps < p.max_steps:
        if abs(u - p.u_stop) < 1e-14:
            termination = TerminationReason.REACHED_BOUNDARY
            detail = f"reached u = {p.u_stop}"
            break
        # land exactly on the boundary
        if direction * (u + h - p.u_stop) > 0.0:
            h = p.u_stop - u
        try:
            y_new, err = _rk45_step(rhs, u, y, h)
            # a denominator must not vanish anywhere on the step: reject
            # steps that land inside the guard band or jump across a zero
            trip = None
            new_guards = _guard_values(p, u + h, y_new)
            for (name, val), (_, prev) in zip(new_guards, prev_guards):
                if abs(val) < p.guard_tol or val * prev < 0.0:
                    trip = _GuardTrip(name, val)
                    break
            if trip is not None:
                raise trip
        except _GuardTrip as trip:
            if abs(h) * 0.5 < p.h_min:
                termination = TerminationReason.SINGULARITY
                detail = f"denominator guard: {trip.name} = {trip.value:.3e}"
                break
            h *= 0.5
            continue
        scale = p.abs_tol + p.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        ratio = float(np.max(np.abs(err) / scale))
        if ratio <= 1.0:
            n_steps += 1
            u = u + h
            y = y_new
            prev_guards = new_guards
            us.append(u)
            fs.append(y[0])
            fps.append(_fp_of_state(p, y[1]))
            worst_ratio = max(worst_ratio, ratio)
            grow = 5.0 if ratio == 0.0 else min(5.0, 0.9 * ratio ** -0.2)
            h = direction * min(abs(h) * grow, p.h_max)
        else:
            shrink = max(0.2, 0.9 * ratio ** -0.2)
            if abs(h) * shrink < p.h_min:
                termination = TerminationReason.STEP_UNDERFLOW
                detail = f"|h| < h_min = {p.h_min:.1e} at u = {u:.9g}"
                break
            h *= shrink

    return SolvedMeridian(us=np.array(us), fs=np.array(fs), fps=np.array(fps),
                          termination=termination, detail=detail, problem=p,
                          n_steps=n_steps, max_error_ratio=worst_ratio)


# ---------------------------------------------------------------------------
# diagnostics

def conservation_check(s: RotationalSurface, u_samples,
                       tol: float = 1e-6):
    """Conserved quantity G^2 (mu^2 + nu1^2) of a minimal surface.

    Checks minimality first (defining residual below tol at every sample,
    else NotMinimal), then evaluates the quantity from the closed forms and
    returns (estimates, max relative spread).  For the closed-form minimal
    meridians the estimates equal A (alpha^2 + beta^2).
    """
    u_samples = np.asarray(u_samples, dtype=float)
    c2 = np.empty_like(u_samples)
    for i, u in enumerate(u_samples):
        r = residual_minimal(s, float(u))
        if abs(r) > tol:
            raise NotMinimal(
                f"defining residual {r:.3e} > {tol:.1e} at u={u}")
        fr = closed_invariants_frame8(s, float(u))
        _, _, G0 = first_form_coefficients(s, float(u))
        c2[i] = G0 * G0 * (fr.mu ** 2 + fr.nu1 ** 2)
    mid = float(np.mean(c2))
    spread = float((np.max(c2) - np.min(c2)) / max(abs(mid), 1e-300))
    return c2, spread


def normalized_speed_residual(m: MeridianCurve, kind: SurfaceKind,
                              u_samples=None) -> float:
    """max_u |f'^2 +/- g'^2 - 1|: distance from the unit-speed normalization
    assumed in the minimal-meridian derivation.  Purely diagnostic."""
    if u_samples is None:
        lo, hi = m.domain
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("meridian domain unbounded; pass u_samples")
        u_samples = np.linspace(lo, hi, 64)
    worst = 0.0
    for u in np.asarray(u_samples, dtype=float):
        fp, gp = m.fp(float(u)), m.gp(float(u))
        speed2 = fp * fp + gp * gp if kind is SurfaceKind.FIRST else fp * fp - gp * gp
        worst = max(worst, abs(speed2 - 1.0))
    return worst


# ---------------------------------------------------------------------------
# meridian sample files

MERIDIAN_MAGIC = "minksurf-meridian v1"


def save_meridian_csv(path, us, fs, fps, gs=None, gps=None,
                      meta: Optional[dict] = None) -> None:
    """Sample-grid CSV; '# key=value' comment header, then u,f,fprime
    (graph chart g = u) or u,f,fprime,g,gprime columns, 17 significant
    digits."""
    meta = dict(meta or {})
    meta.setdefault("chart", "graph-f" if gs is None else "explicit")
    lines = [f"# {MERIDIAN_MAGIC}"]
    for key in sorted(meta):
        lines.append(f"# {key}={meta[key]}")
    cols = ["u", "f", "fprime"] + ([] if gs is None else ["g", "gprime"])
    lines.append(",".join(cols))
    arrays = [np.asarray(a, dtype=float) for a in
              ((us, fs, fps) if gs is None else (us, fs, fps, gs, gps))]
    for row in zip(*arrays):
        lines.append(",".join(f"{x:.17g}" for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_meridian_csv(path, resolution_tol: float = 1e-6):
    """Inverse of save_meridian_csv: (MeridianCurve, metadata dict)."""
    meta: dict = {}
    header = None
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            if header is None:
                header = [c.strip() for c in line.split(",")]
                continue
            rows.append([float(x) for x in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array(rows)
    cols = {name: data[:, i] for i, name in enumerate(header)}
    if "g" in cols:
        m = sampled_meridian(cols["u"], cols["f"], cols["fprime"],
                             cols["g"], cols["gprime"],
                             name=meta.get("family", "file"), params=meta,
                             resolution_tol=resolution_tol)
    else:
        m = sampled_meridian(cols["u"], cols["f"], cols["fprime"],
                             name=meta.get("family", "file"), params=meta,
                             resolution_tol=resolution_tol)
    return m, meta
