"""General rotational surfaces of first and second type and their closed-form
invariants.

A plane profile curve (f(u), g(u)) is swept by a simultaneous circular
rotation (speed alpha) in the e1e2-plane and hyperbolic rotation (speed
beta) in the e3e4-plane:

    first type:   z = (f cos av, f sin av, g cosh bv, g sinh bv),
                  admissible where a^2 f^2 - b^2 g^2 > 0;
    second type:  z = (f cos av, f sin av, g sinh bv, g cosh bv),
                  admissible where f'^2 - g'^2 > 0 and a^2 f^2 + b^2 g^2 > 0,

with f'^2 + g'^2 > 0 (regular profile) in both cases.  Both families are
parameterized by principal lines (F = 0, M = 0), the first has spacelike
mean curvature vector, the second timelike.

All invariants below are closed-form rational expressions in f, g and their
first two derivatives; `as_patch` bridges them to the numeric kernel, which
serves as the independent second route in the test suite.

Sign caveat: the closed forms for kappa, mu and beta2 are quoted for one
historical frame convention per family.  The kernel's frame is pinned by the
positive-orientation rule, which reproduces these expressions up to one
global sign per family (k, K and all even combinations are unaffected).
Comparisons should align that single sign per sweep; see `verify`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainViolation, SingularConfiguration
from .kernel import FrameInvariants, SurfacePatch
from .minkowski import SpacetimeVector

ScalarFun = Callable[[float], float]


@dataclass(frozen=True)
class Provenance:
    source: str                    # "preset" | "sampled"
    name: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class MeridianCurve:
    """Profile curve (f(u), g(u)) with first and second derivatives.

    For sampled curves, `nodes` holds the parameter grid the evaluators
    interpolate (None for closed-form presets)."""

    f: ScalarFun
    fp: ScalarFun
    fpp: ScalarFun
    g: ScalarFun
    gp: ScalarFun
    gpp: ScalarFun
    domain: tuple[float, float] = (-math.inf, math.inf)
    provenance: Provenance = Provenance("preset", "anonymous")
    nodes: Optional[np.ndarray] = None

    def contains(self, u: float, slack: float = 1e-12) -> bool:
        return self.domain[0] - slack <= u <= self.domain[1] + slack

    def profile(self, u: float):
        """(f, g, f', g', f'', g'') at u; raises outside the domain."""
        if not self.contains(u):
            raise DomainViolation(
                f"u={u} outside meridian domain {self.domain}")
        return (self.f(u), self.g(u), self.fp(u),
                self.gp(u), self.fpp(u), self.gpp(u))


class SurfaceKind(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class RotationalSurface:
    kind: SurfaceKind
    alpha: float
    beta: float
    meridian: MeridianCurve

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("rotation speeds alpha, beta must be positive")


# ---------------------------------------------------------------------------
# presets

def line_meridian(a: float, b: float = 0.0) -> MeridianCurve:
    """f = u, g = a u + b (straight profile; b = 0 gives a ray from 0)."""
    return MeridianCurve(
        f=lambda u: u, fp=lambda u: 1.0, fpp=lambda u: 0.0,
        g=lambda u: a * u + b, gp=lambda u: a, gpp=lambda u: 0.0,
        provenance=Provenance("preset", "line", {"a": a, "b": b}))


def power_law_meridian(c: float, alpha: float, beta: float) -> MeridianCurve:
    """f = u, g = c u^(-beta^2/alpha^2) on u > 0."""
    p = -(beta * beta) / (alpha * alpha)
    return MeridianCurve(
        f=lambda u: u, fp=lambda u: 1.0, fpp=lambda u: 0.0,
        g=lambda u: c * u ** p,
        gp=lambda u: c * p * u ** (p - 1.0),
        gpp=lambda u: c * p * (p - 1.0) * u ** (p - 2.0),
        domain=(0.0, math.inf),
        provenance=Provenance("preset", "power-law",
                              {"c": c, "alpha": alpha, "beta": beta}))


def circle_meridian(a: float = 1.0) -> MeridianCurve:
    """f = a cos u, g = a sin u; sweeping it gives a flat-normal-connection
    surface of first type (a quadric slice when a = alpha = beta = 1)."""
    return MeridianCurve(
        f=lambda u: a * math.cos(u), fp=lambda u: -a * math.sin(u),
        fpp=lambda u: -a * math.cos(u),
        g=lambda u: a * math.sin(u), gp=lambda u: a * math.cos(u),
        gpp=lambda u: -a * math.sin(u),
        provenance=Provenance("preset", "circle", {"a": a}))


def hyperbolic_meridian(a: float = 1.0) -> MeridianCurve:
    """f = a sinh u, g = a cosh u; second-type companion of the circle."""
    return MeridianCurve(
        f=lambda u: a * math.sinh(u), fp=lambda u: a * math.cosh(u),
        fpp=lambda u: a * math.sinh(u),
        g=lambda u: a * math.cosh(u), gp=lambda u: a * math.sinh(u),
        gpp=lambda u: a * math.cosh(u),
        provenance=Provenance("preset", "hyperbolic", {"a": a}))


def circle_profile_surface(a: float = 1.0, alpha: float = 1.0,
                           beta: float = 1.0) -> RotationalSurface:
    return RotationalSurface(SurfaceKind.FIRST, alpha, beta, circle_meridian(a))


def hyperbolic_profile_surface(a: float = 1.0, alpha: float = 1.0,
                               beta: float = 1.0) -> RotationalSurface:
    return RotationalSurface(SurfaceKind.SECOND, alpha, beta,
                             hyperbolic_meridian(a))


# ---------------------------------------------------------------------------
# embedding

def _checked_profile(s: RotationalSurface, u: float):
    f, g, fp, gp, fpp, gpp = s.meridian.profile(u)
    al, be = s.alpha, s.beta
    if fp * fp + gp * gp <= 0.0:
        raise DomainViolation(f"profile not regular at u={u}")
    if s.kind is SurfaceKind.FIRST:
        if al * al * f * f - be * be * g * g <= 0.0:
            raise DomainViolation(
                f"first-type condition a^2 f^2 - b^2 g^2 > 0 fails at u={u}")
    else:
        if fp * fp - gp * gp <= 0.0:
            raise DomainViolation(
                f"second-type condition f'^2 - g'^2 > 0 fails at u={u}")
        if al * al * f * f + be * be * g * g <= 0.0:
            raise DomainViolation(
                f"second-type condition a^2 f^2 + b^2 g^2 > 0 fails at u={u}")
    return f, g, fp, gp, fpp, gpp


def embed(s: RotationalSurface, u: float, v: float) -> SpacetimeVector:
    f, g, _, _, _, _ = _checked_profile(s, u)
    av, bv = s.alpha * v, s.beta * v
    if s.kind is SurfaceKind.FIRST:
        return SpacetimeVector(f * math.cos(av), f * math.sin(av),
                               g * math.cosh(bv), g * math.sinh(bv))
    return SpacetimeVector(f * math.cos(av), f * math.sin(av),
                           g * math.sinh(bv), g * math.cosh(bv))


def embed_partials(s: RotationalSurface, u: float, v: float):
    """(z_u, z_v, z_uu, z_uv, z_vv) by the chain rule from the profile."""
    f, g, fp, gp, fpp, gpp = _checked_profile(s, u)
    al, be = s.alpha, s.beta
    ca, sa = math.cos(al * v), math.sin(al * v)
    ch, sh = math.cosh(be * v), math.sinh(be * v)
    if s.kind is SurfaceKind.FIRST:
        p, q = ch, sh          # slots 3, 4 carry (g*p, g*q)
    else:
        p, q = sh, ch
    zu = SpacetimeVector(fp * ca, fp * sa, gp * p, gp * q)
    zv = SpacetimeVector(-al * f * sa, al * f * ca, be * g * q, be * g * p)
    zuu = SpacetimeVector(fpp * ca, fpp * sa, gpp * p, gpp * q)
    zuv = SpacetimeVector(-al * fp * sa, al * fp * ca, be * gp * q, be * gp * p)
    zvv = SpacetimeVector(-al * al * f * ca, -al * al * f * sa,
                          be * be * g * p, be * be * g * q)
    return zu, zv, zuu, zuv, zvv


def as_patch(s: RotationalSurface,
             u_range: Optional[tuple[float, float]] = None,
             v_range: tuple[float, float] = (0.0, 2.0 * math.pi)) -> SurfacePatch:
    """Analytic SurfacePatch wrapping the embedding; the patch is in
    principal parameters (F = 0 and M = 0 identically)."""
    if u_range is None:
        u_range = s.meridian.domain

    def part(i):
        return lambda u, v: embed_partials(s, u, v)[i]

    return SurfacePatch(z=lambda u, v: embed(s, u, v),
                        z_u=part(0), z_v=part(1), z_uu=part(2),
                        z_uv=part(3), z_vv=part(4),
                        u_range=u_range, v_range=v_range)


# ---------------------------------------------------------------------------
# closed-form invariants

def _blocks(s: RotationalSurface, u: float):
    """Common building blocks of all closed forms at u.

    E0 = f'^2 +/- g'^2, G0 = a^2 f^2 -/+ b^2 g^2 (upper sign: first type),
    P = g f' - f g', Q = g' f'' - f' g'', R = a^2 f g' + b^2 g f'.
    """
    f, g, fp, gp, fpp, gpp = _checked_profile(s, u)
    al, be = s.alpha, s.beta
    if s.kind is SurfaceKind.FIRST:
        E0 = fp * fp + gp * gp
        G0 = al * al * f * f - be * be * g * g
    else:
        E0 = fp * fp - gp * gp
        G0 = al * al * f * f + be * be * g * g
    P = g * fp - f * gp
    Q = gp * fpp - fp * gpp
    R = al * al * f * gp + be * be * g * fp
    return f, g, fp, gp, E0, G0, P, Q, R


def first_form_coefficients(s: RotationalSurface, u: float):
    """(E, F, G) of the swept surface: E = f'^2 +/- g'^2, F = 0,
    G = a^2 f^2 -/+ b^2 g^2."""
    _, _, _, _, E0, G0, _, _, _ = _blocks(s, u)
    return E0, 0.0, G0


def closed_invariants_kKkappa(s: RotationalSurface, u: float):
    """(k, kappa, K) of the swept surface at profile parameter u:

        k     =  4 a^2 b^2 P^2 Q R / (E0^3 G0^3)
        kappa =  a b P (G0 Q + E0 R) / (E0^2 G0^2)
        K     = (-+ G0 R Q +- a^2 b^2 E0 P^2) / (E0^2 G0^2)

    with the blocks of `_blocks` (upper signs: first type)."""
    _, _, _, _, E0, G0, P, Q, R = _blocks(s, u)
    al, be = s.alpha, s.beta
    ab2 = al * al * be * be
    k = 4.0 * ab2 * P * P * Q * R / (E0 ** 3 * G0 ** 3)
    kappa = al * be * P * (G0 * Q + E0 * R) / (E0 ** 2 * G0 ** 2)
    if s.kind is SurfaceKind.FIRST:
        K = (-G0 * R * Q + ab2 * E0 * P * P) / (E0 ** 2 * G0 ** 2)
    else:
        K = (G0 * R * Q - ab2 * E0 * P * P) / (E0 ** 2 * G0 ** 2)
    return k, kappa, K


def closed_invariants_frame8(s: RotationalSurface, u: float) -> FrameInvariants:
    """The eight frame invariants in closed form.  gamma1, lam and beta1
    vanish identically for both families (hence every such surface free of
    minimal points is a non-trivial Chen surface)."""
    f, g, fp, gp, E0, G0, P, Q, R = _blocks(s, u)
    al, be = s.alpha, s.beta
    sE = math.sqrt(E0)
    nu1 = Q / E0 ** 1.5
    nu2 = -R / (sE * G0)
    if s.kind is SurfaceKind.FIRST:
        gamma2 = -(al * al * f * fp - be * be * g * gp) / (sE * G0)
        mu = al * be * P / (sE * G0)
        beta2 = al * be * (f * fp + g * gp) / (sE * G0)
    else:
        gamma2 = -(al * al * f * fp + be * be * g * gp) / (sE * G0)
        mu = -al * be * P / (sE * G0)
        beta2 = al * be * (g * gp - f * fp) / (sE * G0)
    return FrameInvariants(gamma1=0.0, gamma2=gamma2, nu1=nu1, nu2=nu2,
                           lam=0.0, mu=mu, beta1=0.0, beta2=beta2)


# ---------------------------------------------------------------------------
# defining residuals of the special classes

_GUARD = 1e-12


def residual_flat(s: RotationalSurface, u: float) -> float:
    """Flatness (K = 0) characterization, left minus right of

        a^2 b^2 E0 P^2 = G0 R Q        (both types, with their E0, G0).
    """
    _, _, _, _, E0, G0, P, Q, R = _blocks(s, u)
    ab2 = s.alpha ** 2 * s.beta ** 2
    return ab2 * E0 * P * P - G0 * R * Q


def residual_flat_normal(s: RotationalSurface, u: float) -> float:
    """Flat normal connection (kappa = 0) characterization:

        Q / E0 = -R / G0   ->   residual = Q/E0 + R/G0.
    """
    _, _, _, _, E0, G0, _, Q, R = _blocks(s, u)
    if abs(E0) < _GUARD or abs(G0) < _GUARD:
        raise SingularConfiguration(
            f"denominator vanishes at u={u} (E0={E0:.3e}, G0={G0:.3e})")
    return Q / E0 + R / G0


def residual_minimal(s: RotationalSurface, u: float) -> float:
    """Minimality (nu1 + nu2 = 0) characterization:

        Q / E0 = R / G0   ->   residual = Q/E0 - R/G0.
    """
    _, _, _, _, E0, G0, _, Q, R = _blocks(s, u)
    if abs(E0) < _GUARD or abs(G0) < _GUARD:
        raise SingularConfiguration(
            f"denominator vanishes at u={u} (E0={E0:.3e}, G0={G0:.3e})")
    return Q / E0 - R / G0


# ---------------------------------------------------------------------------
# sampled meridians

def _interp_channel(us, ys, yps, resolution_tol):
    """(value, d1, d2) evaluators for a sampled scalar channel y(u).

    y comes from a clamped cubic spline through the values (exact first
    derivatives at the ends), y' from a quintic spline through the sampled
    derivatives, y'' from that quintic's derivative.  The returned estimate
    arrays support the resolution checks:

      * mismatch: |d/du of the value spline - sampled y'| at the nodes
        (consistency of the two data channels);
      * f2_disagreement: |cubic vs quintic reconstruction of y''| at the
        nodes, an error estimate for the second derivative.
    """
    from scipy.interpolate import CubicSpline, make_interp_spline

    y_sp = CubicSpline(us, ys, bc_type=((1, yps[0]), (1, yps[-1])))
    yp_q = make_interp_spline(us, yps, k=5)
    yp_c = CubicSpline(us, yps)
    ypp = yp_q.derivative()
    mismatch = np.abs(y_sp(us, 1) - yps)
    f2_dis = np.abs(yp_c(us, 1) - ypp(us))
    evals = (lambda u: float(y_sp(u)), lambda u: float(yp_q(u)),
             lambda u: float(ypp(u)))
    return evals, mismatch, f2_dis


def sampled_meridian(us, fs, fps, gs=None, gps=None,
                     name: str = "sampled", params: Optional[dict] = None,
                     resolution_tol: float = 1e-6,
                     certify_d2: bool = False) -> MeridianCurve:
    """Meridian from sample arrays {(u_i, f_i, f'_i)} via splines.

    Values interpolate exactly at the nodes; first derivatives come from a
    quintic spline through the sampled derivative data, whose derivative
    supplies the second derivative.  When gs is None the curve is the graph
    chart (f unknown, g = u).

    Resolution policy: the derivative of the value spline must agree with
    the sampled derivatives to resolution_tol at every node, else
    ResolutionError.  With certify_d2 the second-derivative reconstruction
    is additionally certified by the disagreement of two independent
    routes (cubic vs quintic); end nodes whose disagreement exceeds
    resolution_tol are dropped (this is where ODE trajectories approach a
    singular boundary), interior failures raise.
    """
    from .errors import ResolutionError

    us = np.asarray(us, dtype=float)
    fs = np.asarray(fs, dtype=float)
    fps = np.asarray(fps, dtype=float)
    if us.size < 6:
        raise ResolutionError(f"need at least 6 nodes, got {us.size}")
    order = np.argsort(us)
    us, fs, fps = us[order], fs[order], fps[order]
    if gs is not None:
        gs = np.asarray(gs, dtype=float)[order]
        gps = np.asarray(gps, dtype=float)[order]

    lo, hi = 0, us.size
    if certify_d2:
        # probe with throwaway splines, then rebuild on the kept window
        _, _, dis = _interp_channel(us, fs, fps, resolution_tol)
        if gs is not None:
            _, _, dis_g = _interp_channel(us, gs, gps, resolution_tol)
            dis = np.maximum(dis, dis_g)
        while hi - lo > 6 and dis[hi - 1] > resolution_tol:
            hi -= 1
        while hi - lo > 6 and dis[lo] > resolution_tol:
            lo += 1
        bad = dis[lo:hi] > resolution_tol
        if bad.any():
            raise ResolutionError(
                f"second-derivative reconstruction uncertified at "
                f"{int(bad.sum())} interior nodes (worst "
                f"{float(dis[lo:hi].max()):.3e} > {resolution_tol:.1e})")
        us, fs, fps = us[lo:hi], fs[lo:hi], fps[lo:hi]
        if gs is not None:
            gs, gps = gs[lo:hi], gps[lo:hi]

    (f_f, f_p, f_pp), mismatch, _ = _interp_channel(us, fs, fps, resolution_tol)
    est = float(mismatch.max())
    if est > resolution_tol:
        raise ResolutionError(
            f"grid too coarse: derivative mismatch {est:.3e} > {resolution_tol:.1e}")

    if gs is None:
        g_f = lambda u: float(u)
        g_p = lambda u: 1.0
        g_pp = lambda u: 0.0
    else:
        (g_f, g_p, g_pp), mismatch_g, _ = _interp_channel(us, gs, gps,
                                                          resolution_tol)
        est_g = float(mismatch_g.max())
        if est_g > resolution_tol:
            raise ResolutionError(
                f"grid too coarse (g): mismatch {est_g:.3e} > {resolution_tol:.1e}")

    prov = Provenance("sampled", name,
                      dict(params or {}, nodes=int(us.size), spline_order=5))
    return MeridianCurve(
        f=f_f, fp=f_p, fpp=f_pp, g=g_f, gp=g_p, gpp=g_pp,
        domain=(float(us[0]), float(us[-1])), provenance=prov,
        nodes=us.copy())
