"""Pointwise invariants of spacelike surface patches z(u, v) in R^4_1.

Everything here is numeric and works for an arbitrary embedding with
first/second partial derivatives, supplied analytically or generated from
z alone by central differences.  The quantities computed per point:

    E, F, G, W          induced metric and area element W = sqrt(EG - F^2)
    L, M, N             determinant combinations of the normal components
                        c_ij^k = <z_ij, n_k> of the second derivatives in an
                        oriented pseudo-orthonormal normal frame {n1, n2}:
                            L = (2/W) (c111 c122 - c121 c112)
                            M = (1/W) (c111 c222 - c221 c112)
                            N = (2/W) (c121 c222 - c221 c122)
    k, kappa            k = (LN - M^2)/(EG - F^2),
                        kappa = (EN + GL - 2FM)/(2(EG - F^2));
                        kappa is the curvature of the normal connection
    K                   Gauss curvature from the Gauss equation
                            K = <s(x,x), s(y,y)> - <s(x,y), s(x,y)>
                        for an orthonormal tangent pair {x, y}, s the second
                        fundamental tensor (valid because the ambient space
                        is flat)
    H                   mean curvature vector (s(x,x) + s(y,y))/2

L, M, N are independent of the admissible frame choice: any two frames with
<n1,n1>=1, <n2,n2>=-1 and (z_u, z_v, n1, n2) positively oriented differ by a
normal-plane transformation of determinant one, which leaves the 2x2
determinants above unchanged.

The eight frame invariants (gamma1, gamma2, nu1, nu2, lambda, mu, beta1,
beta2) are derivatives of the geometric frame field {x, y, b, l} with
b = H/sqrt(|<H,H>|); they are only defined in principal parameters (F = 0,
M = 0) at points where H is neither zero nor lightlike.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (DomainViolation, LightlikeMeanCurvature, MinimalPoint,
                     NotPrincipalParameters, NotSpacelike)
from .minkowski import (DEFAULT_TOL, SpacetimeVector, inner, normal_frame,
                        orientation_det)

DEFAULT_FD_STEP = 1e-5
DEFAULT_FRAME_STEP = 1e-4


class DerivativeMode(enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite-difference"


VecFun = Callable[[float, float], SpacetimeVector]


@dataclass(frozen=True)
class SurfacePatch:
    """Embedding (u, v) -> SpacetimeVector with derivative evaluators.

    In ANALYTIC mode all five partials must be supplied; in
    FINITE_DIFFERENCE mode they are produced from z by central differences
    of step fd_step (O(h^2) accurate).
    """

    z: VecFun
    z_u: Optional[VecFun] = None
    z_v: Optional[VecFun] = None
    z_uu: Optional[VecFun] = None
    z_uv: Optional[VecFun] = None
    z_vv: Optional[VecFun] = None
    u_range: tuple[float, float] = (-math.inf, math.inf)
    v_range: tuple[float, float] = (-math.inf, math.inf)
    mode: DerivativeMode = DerivativeMode.ANALYTIC
    fd_step: float = DEFAULT_FD_STEP

    def __post_init__(self):
        if self.mode is DerivativeMode.ANALYTIC:
            missing = [n for n in ("z_u", "z_v", "z_uu", "z_uv", "z_vv")
                       if getattr(self, n) is None]
            if missing:
                raise ValueError(f"analytic mode needs partials: {missing}")

    def contains(self, u: float, v: float, slack: float = 1e-12) -> bool:
        return (self.u_range[0] - slack <= u <= self.u_range[1] + slack
                and self.v_range[0] - slack <= v <= self.v_range[1] + slack)

    def require_inside(self, u: float, v: float) -> None:
        if not self.contains(u, v):
            raise DomainViolation(
                f"({u}, {v}) outside patch domain {self.u_range} x {self.v_range}")

    def with_finite_differences(self, h: float = DEFAULT_FD_STEP) -> "SurfacePatch":
        """Copy of this patch that ignores analytic partials and differences z."""
        return SurfacePatch(z=self.z, u_range=self.u_range, v_range=self.v_range,
                            mode=DerivativeMode.FINITE_DIFFERENCE, fd_step=h)

    def partials(self, u: float, v: float):
        """(z_u, z_v, z_uu, z_uv, z_vv) at (u, v) per the derivative mode."""
        if self.mode is DerivativeMode.ANALYTIC:
            return (self.z_u(u, v), self.z_v(u, v),
                    self.z_uu(u, v), self.z_uv(u, v), self.z_vv(u, v))
        h = self.fd_step
        z = self.z
        zc = z(u, v)
        zpu, zmu = z(u + h, v), z(u - h, v)
        zpv, zmv = z(u, v + h), z(u, v - h)
        zu = (zpu - zmu) * (0.5 / h)
        zv = (zpv - zmv) * (0.5 / h)
        zuu = (zpu - 2.0 * zc + zmu) * (1.0 / (h * h))
        zvv = (zpv - 2.0 * zc + zmv) * (1.0 / (h * h))
        zuv = (z(u + h, v + h) - z(u + h, v - h)
               - z(u - h, v + h) + z(u - h, v - h)) * (0.25 / (h * h))
        return zu, zv, zuu, zuv, zvv


class PointClass(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class FirstForm:
    E: float
    F: float
    G: float
    W: float


@dataclass(frozen=True)
class SecondForm:
    # c<ij><k>: normal component <z_ij, n_k> (11 = uu, 12 = uv, 22 = vv)
    c111: float
    c121: float
    c221: float
    c112: float
    c122: float
    c222: float
    L: float
    M: float
    N: float


@dataclass(frozen=True)
class FrameInvariants:
    gamma1: float
    gamma2: float
    nu1: float
    nu2: float
    lam: float
    mu: float
    beta1: float
    beta2: float

    def as_tuple(self):
        return (self.gamma1, self.gamma2, self.nu1, self.nu2,
                self.lam, self.mu, self.beta1, self.beta2)


@dataclass
class InvariantReport:
    first: FirstForm
    second: SecondForm
    k: float
    kappa: float
    K: float
    H: SpacetimeVector
    normH: float
    epsilon: Optional[int]          # sign <H,H>, None when |<H,H>| <= tol
    point_class: PointClass
    is_flat_point: bool
    is_minimal_point: bool
    frame8: Optional[FrameInvariants] = field(default=None)


def first_form(patch: SurfacePatch, u: float, v: float) -> FirstForm:
    patch.require_inside(u, v)
    zu, zv, *_ = patch.partials(u, v)
    return _first_form_of(zu, zv)


def _first_form_of(zu: SpacetimeVector, zv: SpacetimeVector) -> FirstForm:
    E, F, G = inner(zu, zu), inner(zu, zv), inner(zv, zv)
    disc = E * G - F * F
    if E <= 0.0 or disc <= 0.0:
        raise NotSpacelike(f"induced metric not positive definite "
                           f"(E={E:.6e}, EG-F^2={disc:.6e})")
    return FirstForm(E, F, G, math.sqrt(disc))


def second_form(patch: SurfacePatch, u: float, v: float,
                tol: float = DEFAULT_TOL) -> SecondForm:
    patch.require_inside(u, v)
    zu, zv, zuu, zuv, zvv = patch.partials(u, v)
    ff = _first_form_of(zu, zv)
    n1, n2 = normal_frame(zu, zv, tol)
    c111, c121, c221 = inner(zuu, n1), inner(zuv, n1), inner(zvv, n1)
    c112, c122, c222 = inner(zuu, n2), inner(zuv, n2), inner(zvv, n2)
    W = ff.W
    L = (2.0 / W) * (c111 * c122 - c121 * c112)
    M = (1.0 / W) * (c111 * c222 - c221 * c112)
    N = (2.0 / W) * (c121 * c222 - c221 * c122)
    return SecondForm(c111, c121, c221, c112, c122, c222, L, M, N)


def _normal_projector(zu, zv, ff: FirstForm):
    E, F, G = ff.E, ff.F, ff.G
    det = E * G - F * F

    def nor(w: SpacetimeVector) -> SpacetimeVector:
        wu, wv = inner(w, zu), inner(w, zv)
        a = (G * wu - F * wv) / det
        b = (E * wv - F * wu) / det
        return w - a * zu - b * zv

    return nor


def _second_tensor(patch: SurfacePatch, u: float, v: float):
    """s(x,x), s(x,y), s(y,y) for the orthonormal tangent pair

    x = z_u/sqrt(E),  y = (z_v - (F/E) z_u)/|z_v - (F/E) z_u|,

    computed by projecting the second derivatives onto the normal space.
    Also returns the partials and first form for reuse.
    """
    zu, zv, zuu, zuv, zvv = patch.partials(u, v)
    ff = _first_form_of(zu, zv)
    nor = _normal_projector(zu, zv, ff)
    E, F = ff.E, ff.F
    r = F / E
    d2 = ff.G - F * r           # |z_v - (F/E) z_u|^2 = (EG - F^2)/E
    s_uu = nor(zuu)
    s_uv = nor(zuv)
    s_vv = nor(zvv)
    sxx = s_uu * (1.0 / E)
    sxy = (s_uv - r * s_uu) * (1.0 / (math.sqrt(E) * math.sqrt(d2)))
    syy = (s_vv - 2.0 * r * s_uv + r * r * s_uu) * (1.0 / d2)
    return sxx, sxy, syy, (zu, zv, zuu, zuv, zvv), ff


def invariants(patch: SurfacePatch, u: float, v: float,
               tol: float = DEFAULT_TOL) -> InvariantReport:
    """Full pointwise invariant report (without the eight frame invariants).

    k and kappa come from the L, M, N determinant formulas; the Gauss
    curvature comes from the Gauss equation, which is one derivative order
    cheaper than the intrinsic route and reuses the assembled second tensor.
    """
    patch.require_inside(u, v)
    sxx, sxy, syy, (zu, zv, zuu, zuv, zvv), ff = _second_tensor(patch, u, v)
    sf = second_form(patch, u, v, tol)
    disc = ff.E * ff.G - ff.F * ff.F
    k = (sf.L * sf.N - sf.M * sf.M) / disc
    kappa = (ff.E * sf.N + ff.G * sf.L - 2.0 * ff.F * sf.M) / (2.0 * disc)
    K = inner(sxx, syy) - inner(sxy, sxy)
    H = 0.5 * (sxx + syy)
    hh = inner(H, H)
    normH = math.sqrt(abs(hh))
    epsilon: Optional[int] = None
    if abs(hh) > tol:
        epsilon = 1 if hh > 0 else -1
    if k > tol:
        point_class = PointClass.ELLIPTIC
    elif k < -tol:
        point_class = PointClass.HYPERBOLIC
    else:
        point_class = PointClass.PARABOLIC
    flat = max(abs(sf.L), abs(sf.M), abs(sf.N)) <= tol
    minimal = H.max_norm() <= tol
    return InvariantReport(first=ff, second=sf, k=k, kappa=kappa, K=K, H=H,
                           normH=normH, epsilon=epsilon, point_class=point_class,
                           is_flat_point=flat, is_minimal_point=minimal)


def _geometric_frame(patch: SurfacePatch, u: float, v: float, tol: float):
    """Frame {x, y, b, l} at (u, v): principal tangents, b = H/sqrt|<H,H>|,
    l the remaining unit normal fixed by positive orientation of the frame.
    Returns (x, y, b, l, E, G)."""
    zu, zv, zuu, zuv, zvv = patch.partials(u, v)
    ff = _first_form_of(zu, zv)
    sxx, sxy, syy, _, _ = _second_tensor(patch, u, v)
    H = 0.5 * (sxx + syy)
    if H.max_norm() <= tol:
        raise MinimalPoint(f"H = 0 at ({u}, {v}); frame direction b undefined")
    hh = inner(H, H)
    if abs(hh) <= tol:
        raise LightlikeMeanCurvature(f"<H,H> = {hh:.3e} at ({u}, {v})")
    b = H * (1.0 / math.sqrt(abs(hh)))
    eb = 1.0 if hh > 0 else -1.0
    n1, n2 = normal_frame(zu, zv, tol)
    # l spans the <,>-complement of b inside the normal plane
    seed = n2 if eb > 0 else n1
    l = seed - (inner(seed, b) / eb) * b
    ql = inner(l, l)
    l = l * (1.0 / math.sqrt(abs(ql)))
    x = zu * (1.0 / math.sqrt(ff.E))
    y = zv * (1.0 / math.sqrt(ff.G))
    if orientation_det(x, y, b, l) < 0:
        l = -l
    return x, y, b, l, ff.E, ff.G


def frame_invariants(patch: SurfacePatch, u: float, v: float,
                     tol: float = DEFAULT_TOL,
                     h_frame: float = DEFAULT_FRAME_STEP) -> FrameInvariants:
    """Eight scalars of the Frenet-type derivative formulas for {x, y, b, l}:

        nu1 = <D_x x, b>   nu2 = <D_y y, b>   lam = <D_x y, b>   mu = <D_x y, l>
        gamma1 = -y(ln sqrt E)   gamma2 = -x(ln sqrt G)
        beta1 = <D_x b, l>       beta2 = <D_y b, l>

    where D_x = (1/sqrt E) d/du and D_y = (1/sqrt G) d/dv are ambient
    directional derivatives along the principal tangents.  Derivatives of
    the frame fields are taken by central differences of step h_frame, so
    the patch must contain the five-point stencil.

    Only defined in principal parameters (|F|, |M| <= tol) at points with
    non-zero, non-lightlike mean curvature vector.
    """
    patch.require_inside(u, v)
    ff = first_form(patch, u, v)
    sf = second_form(patch, u, v, tol)
    if abs(ff.F) > tol or abs(sf.M) > tol:
        raise NotPrincipalParameters(
            f"F={ff.F:.3e}, M={sf.M:.3e} at ({u}, {v}); need |F|,|M| <= {tol:.1e}")

    x0, y0, b0, l0, E0, G0 = _geometric_frame(patch, u, v, tol)
    h = h_frame
    for (uu, vv) in ((u + h, v), (u - h, v), (u, v + h), (u, v - h)):
        patch.require_inside(uu, vv)

    xp, yp, bp, _, Ep, Gp = _geometric_frame(patch, u + h, v, tol)
    xm, ym, bm, _, Em, Gm = _geometric_frame(patch, u - h, v, tol)
    _, yvp, bvp, _, Evp, _ = _geometric_frame(patch, u, v + h, tol)
    _, yvm, bvm, _, Evm, _ = _geometric_frame(patch, u, v - h, tol)

    inv2h = 0.5 / h
    du_x = (xp - xm) * inv2h
    du_y = (yp - ym) * inv2h
    du_b = (bp - bm) * inv2h
    dv_y = (yvp - yvm) * inv2h
    dv_b = (bvp - bvm) * inv2h

    sE, sG = math.sqrt(E0), math.sqrt(G0)
    nu1 = inner(du_x, b0) / sE
    nu2 = inner(dv_y, b0) / sG
    lam = inner(du_y, b0) / sE
    mu = inner(du_y, l0) / sE
    beta1 = inner(du_b, l0) / sE
    beta2 = inner(dv_b, l0) / sG
    gamma1 = -(math.log(Evp) - math.log(Evm)) * inv2h / (2.0 * sG)
    gamma2 = -(math.log(Gp) - math.log(Gm)) * inv2h / (2.0 * sE)
    return FrameInvariants(gamma1, gamma2, nu1, nu2, lam, mu, beta1, beta2)


def full_report(patch: SurfacePatch, u: float, v: float,
                tol: float = DEFAULT_TOL,
                h_frame: float = DEFAULT_FRAME_STEP) -> InvariantReport:
    """invariants() with the frame invariants attached (raises where they
    are undefined)."""
    rep = invariants(patch, u, v, tol)
    rep.frame8 = frame_invariants(patch, u, v, tol, h_frame)
    return rep


def allied_mean_curvature_magnitude(report: InvariantReport) -> float:
    """Norm of the allied mean curvature vector, |lam| sqrt(kappa^2 - k)/2.

    Zero exactly at Chen points (for non-minimal points) and at minimal
    points, where the factor kappa^2 - k vanishes.  Small negative values of
    kappa^2 - k (round-off at minimal points) are clamped to zero.
    """
    if report.frame8 is None:
        raise ValueError("report.frame8 missing; run frame_invariants first")
    gap = report.kappa ** 2 - report.k
    return 0.5 * abs(report.frame8.lam) * math.sqrt(max(gap, 0.0))
