"""Seeded property-check suite behind the `verify` CLI command.

Each check exercises one documented invariant of the package and reports a
worst-case residual.  Randomness is confined to a numpy Generator seeded by
the caller, so identical seeds give identical reports.

Sign alignment: scalar invariants that are odd under a normal-frame flip
(kappa; mu, beta1, beta2 of the frame eight) are only defined up to one
global sign per connected surface, and the historical closed-form
conventions of the two families disagree with the oriented kernel frame on
some of them.  Comparisons therefore fix a single sign per sweep from the
data (`align_sign`) and then demand full-precision agreement; everything
even (k, K, products, norms) is compared signed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernel, minkowski, rotational
from .kernel import (SurfacePatch, allied_mean_curvature_magnitude,
                     frame_invariants, first_form, invariants, second_form)
from .meridians import (OdeProblem, OdeTarget, ParabolicCase, TerminationReason,
                        conservation_check, minimal_meridian,
                        normalized_speed_residual, parabolic_meridian, solve_ode)
from .minkowski import (CausalClass, SpacetimeVector, causal_class, inner,
                        normal_frame, orientation_det)
from .rotational import (RotationalSurface, SurfaceKind, as_patch,
                         circle_profile_surface, closed_invariants_frame8,
                         closed_invariants_kKkappa, embed,
                         hyperbolic_profile_surface, line_meridian,
                         power_law_meridian, residual_flat, residual_flat_normal,
                         residual_minimal)

TWO_PI = 2.0 * math.pi


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name:<44s} worst={self.worst:.3e}{extra}"


def rel_gap(a: float, b: float, floor: float = 1.0) -> float:
    """|a-b| / max(|a|, |b|, floor): relative error with an absolute floor
    so that near-zero pairs compare absolutely."""
    return abs(a - b) / max(abs(a), abs(b), floor)


def align_sign(xs, ys) -> float:
    """Global sign s in {+1,-1} minimizing the gap between s*xs and ys."""
    dot = float(np.dot(xs, ys))
    return -1.0 if dot < 0.0 else 1.0


# ---------------------------------------------------------------------------
# random geometry helpers

def _random_spacelike_plane(rng) -> tuple[SpacetimeVector, SpacetimeVector]:
    while True:
        t1 = SpacetimeVector(*rng.normal(size=4))
        if inner(t1, t1) < 0.3:
            continue
        t2 = SpacetimeVector(*rng.normal(size=4))
        g11, g12, g22 = inner(t1, t1), inner(t1, t2), inner(t2, t2)
        if g11 * g22 - g12 * g12 > 0.1:
            return t1, t2


@dataclass
class SurfaceSample:
    surface: RotationalSurface
    u: float
    v: float
    label: str


def _admissible(s: RotationalSurface, u: float) -> bool:
    try:
        rotational._checked_profile(s, u)
        return True
    except Exception:
        return False


def sample_surfaces(rng, n_per_preset: int = 13) -> list[SurfaceSample]:
    """In-domain random samples across every meridian preset and both kinds.

    v is drawn from [0, pi]: the invariants do not depend on v, while the
    hyperbolic-angle factors cosh/sinh(beta v) amplify floating-point
    cancellation exponentially, so the sweeps stay where double precision
    supports the 1e-8 comparisons."""
    samples: list[SurfaceSample] = []

    def draw(label, kind, make, u_lo, u_hi, tries=200):
        got = 0
        attempts = 0
        while got < n_per_preset and attempts < tries * n_per_preset:
            attempts += 1
            s = make()
            u = float(rng.uniform(u_lo, u_hi))
            if not s.meridian.contains(u):
                continue
            if not _admissible(s, u):
                continue
            v = float(rng.uniform(0.0, math.pi))
            samples.append(SurfaceSample(s, u, v, label))
            got += 1
        if got < n_per_preset:
            raise RuntimeError(f"could not sample preset {label}")

    draw("first/line", SurfaceKind.FIRST,
         lambda: RotationalSurface(
             SurfaceKind.FIRST, rng.uniform(1.2, 2.0), rng.uniform(0.4, 0.8),
             line_meridian(rng.uniform(0.1, 0.4), rng.uniform(0.05, 0.3))),
         1.5, 3.0)
    draw("first/power-law", SurfaceKind.FIRST,
         lambda: (lambda al, be: RotationalSurface(
             SurfaceKind.FIRST, al, be,
             power_law_meridian(rng.uniform(0.3, 1.0), al, be)))(
                 rng.uniform(1.0, 2.0), rng.uniform(0.5, 1.0)),
         1.2, 2.5)
    draw("first/circle", SurfaceKind.FIRST,
         lambda: circle_profile_surface(rng.uniform(0.7, 1.3),
                                        rng.uniform(0.8, 1.6),
                                        rng.uniform(0.4, 1.0)),
         0.05, 0.6)
    draw("first/minimal", SurfaceKind.FIRST,
         lambda: (lambda al, be, A: RotationalSurface(
             SurfaceKind.FIRST, al, be,
             minimal_meridian(SurfaceKind.FIRST, al, be, A,
                              rng.uniform(0.0, 1.0),
                              1 if rng.uniform() < 0.5 else -1)))(
                 rng.uniform(0.8, 1.5), rng.uniform(0.5, 1.2),
                 rng.uniform(0.1, 0.5)),
         1.0, 2.2)
    draw("second/line", SurfaceKind.SECOND,
         lambda: RotationalSurface(
             SurfaceKind.SECOND, rng.uniform(0.8, 1.8), rng.uniform(0.5, 1.5),
             line_meridian(rng.uniform(0.2, 0.8), rng.uniform(0.0, 0.3))),
         0.5, 2.5)
    draw("second/power-law", SurfaceKind.SECOND,
         lambda: (lambda al, be: RotationalSurface(
             SurfaceKind.SECOND, al, be,
             power_law_meridian(rng.uniform(0.3, 1.0), al, be)))(
                 rng.uniform(1.0, 2.0), rng.uniform(0.5, 1.0)),
         1.2, 3.0)
    draw("second/hyperbolic", SurfaceKind.SECOND,
         lambda: hyperbolic_profile_surface(rng.uniform(0.7, 1.3),
                                            rng.uniform(0.8, 1.6),
                                            rng.uniform(0.5, 1.2)),
         0.2, 1.5)
    draw("second/minimal", SurfaceKind.SECOND,
         lambda: (lambda al, be: RotationalSurface(
             SurfaceKind.SECOND, al, be,
             minimal_meridian(SurfaceKind.SECOND, al, be,
                              rng.uniform(0.3, 1.0), rng.uniform(0.0, 1.0),
                              1 if rng.uniform() < 0.5 else -1)))(
                 rng.uniform(0.8, 1.5), rng.uniform(0.6, 1.6)),
         0.5, 2.0)
    return samples


def _patch_for(sample: SurfaceSample) -> SurfacePatch:
    lo, hi = sample.surface.meridian.domain
    return as_patch(sample.surface, u_range=(lo, hi),
                    v_range=(-TWO_PI, 2.0 * TWO_PI))


# ---------------------------------------------------------------------------
# minkowski checks

def check_inner_bilinearity(rng) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        u = SpacetimeVector(*rng.uniform(-3, 3, size=4))
        v = SpacetimeVector(*rng.uniform(-3, 3, size=4))
        w = SpacetimeVector(*rng.uniform(-3, 3, size=4))
        a, b = rng.uniform(-2, 2, size=2)
        lhs = inner(a * u + b * v, w)
        rhs = a * inner(u, w) + b * inner(v, w)
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("minkowski.inner_bilinearity", worst < 1e-12, worst)


def check_orientation_alternating(rng) -> CheckResult:
    worst = 0.0
    ok = True
    for _ in range(50):
        vs = [SpacetimeVector(*rng.uniform(-2, 2, size=4)) for _ in range(4)]
        base = orientation_det(*vs)
        for i in range(4):
            for j in range(i + 1, 4):
                sw = list(vs)
                sw[i], sw[j] = sw[j], sw[i]
                d = orientation_det(*sw)
                if d != -base:          # canonicalization makes this exact
                    ok = False
                    worst = max(worst, abs(d + base))
        dup = list(vs)
        dup[2] = dup[0]
        if orientation_det(*dup) != 0.0:
            ok = False
    return CheckResult("minkowski.orientation_alternating", ok, worst,
                       "transpositions negate bit-exactly")


def check_normal_frame_gram(rng) -> CheckResult:
    worst = 0.0
    for _ in range(100):
        t1, t2 = _random_spacelike_plane(rng)
        n1, n2 = normal_frame(t1, t2)
        residuals = [inner(n1, n1) - 1.0, inner(n2, n2) + 1.0, inner(n1, n2),
                     inner(n1, t1), inner(n1, t2), inner(n2, t1), inner(n2, t2)]
        worst = max(worst, max(abs(r) for r in residuals))
        if orientation_det(t1, t2, n1, n2) <= 0.0:
            return CheckResult("minkowski.normal_frame_gram", False,
                               worst, "orientation violated")
    return CheckResult("minkowski.normal_frame_gram", worst < 1e-10, worst)


def check_causal_examples(rng) -> CheckResult:
    cases = [
        (minkowski.E2, CausalClass.SPACELIKE),
        (minkowski.E4, CausalClass.TIMELIKE),
        (SpacetimeVector(3.0, 0.0, 0.0, 3.0), CausalClass.LIGHTLIKE),
        (SpacetimeVector(1.0, 0.0, 0.0, 1.0), CausalClass.LIGHTLIKE),
        (minkowski.ZERO, CausalClass.ZERO),
    ]
    ok = all(causal_class(v) is c for v, c in cases)
    return CheckResult("minkowski.causal_examples", ok, 0.0)


# ---------------------------------------------------------------------------
# kernel checks

def _product_patch() -> SurfacePatch:
    """Spacelike product of the unit circle (e1e2-plane) and the unit
    hyperbola x3^2 - x4^2 = -1: conjugate coordinates (z_uv = 0)."""
    return SurfacePatch(
        z=lambda u, v: SpacetimeVector(math.cos(u), math.sin(u),
                                       math.sinh(v), math.cosh(v)),
        z_u=lambda u, v: SpacetimeVector(-math.sin(u), math.cos(u), 0.0, 0.0),
        z_v=lambda u, v: SpacetimeVector(0.0, 0.0, math.cosh(v), math.sinh(v)),
        z_uu=lambda u, v: SpacetimeVector(-math.cos(u), -math.sin(u), 0.0, 0.0),
        z_uv=lambda u, v: SpacetimeVector(0.0, 0.0, 0.0, 0.0),
        z_vv=lambda u, v: SpacetimeVector(0.0, 0.0, math.sinh(v), math.cosh(v)))


def check_fd_convergence(rng) -> CheckResult:
    """Central differences of z reproduce the analytic fundamental forms
    with observed order >= 1.9 between steps h and h/2."""
    s = circle_profile_surface(1.0, 1.2, 0.7)
    patch = as_patch(s, u_range=(-1.0, 1.0), v_range=(-1.0, 7.0))
    pts = [(0.3, 0.5), (0.15, 2.0), (-0.2, 1.1)]
    h = 1e-3
    min_order = math.inf
    for (u, v) in pts:
        ff = first_form(patch, u, v)
        sf = second_form(patch, u, v)
        exact = np.array([ff.E, ff.F, ff.G, sf.L, sf.M, sf.N])
        errs = []
        for step in (h, h / 2):
            fd = patch.with_finite_differences(step)
            ff2 = first_form(fd, u, v)
            sf2 = second_form(fd, u, v)
            got = np.array([ff2.E, ff2.F, ff2.G, sf2.L, sf2.M, sf2.N])
            errs.append(np.abs(got - exact))
        e1, e2 = errs
        for a, b in zip(e1, e2):
            # order is only measurable where truncation dominates round-off;
            # second-derivative round-off is ~1e-16/h^2 ~ 4e-10 at h/2
            if a < 1e-8:
                continue
            min_order = min(min_order, math.log2(a / b))
    return CheckResult("kernel.fd_convergence_order", min_order >= 1.9,
                       min_order, "observed order, must be >= 1.9")


def check_product_patch(rng) -> CheckResult:
    patch = _product_patch()
    worst = 0.0
    for (u, v) in [(0.3, 0.2), (1.1, -0.6), (2.5, 0.9)]:
        rep = invariants(patch, u, v)
        vals = [rep.first.E - 1.0, rep.first.F, rep.first.G - 1.0,
                rep.second.L, rep.second.M - 1.0, rep.second.N,
                rep.k + 1.0, rep.kappa, rep.K]
        worst = max(worst, max(abs(x) for x in vals))
        if rep.point_class is not kernel.PointClass.HYPERBOLIC:
            return CheckResult("kernel.product_patch", False, worst,
                               "expected hyperbolic points")
    return CheckResult("kernel.product_patch", worst < 1e-10, worst,
                       "L=N=0, M=1, k=-1, kappa=K=0")


def check_plane_patch(rng) -> CheckResult:
    patch = SurfacePatch(
        z=lambda u, v: SpacetimeVector(u, v, 0.0, 0.0),
        z_u=lambda u, v: SpacetimeVector(1.0, 0.0, 0.0, 0.0),
        z_v=lambda u, v: SpacetimeVector(0.0, 1.0, 0.0, 0.0),
        z_uu=lambda u, v: minkowski.ZERO, z_uv=lambda u, v: minkowski.ZERO,
        z_vv=lambda u, v: minkowski.ZERO)
    rep = invariants(patch, 0.4, -1.2)
    vals = [rep.first.E - 1.0, rep.first.F, rep.first.G - 1.0, rep.second.L,
            rep.second.M, rep.second.N, rep.k, rep.kappa, rep.K, rep.normH]
    worst = max(abs(x) for x in vals)
    ok = (worst < 1e-14 and rep.is_flat_point and rep.is_minimal_point
          and rep.epsilon is None)
    return CheckResult("kernel.plane_zeros", ok, worst)


def check_relation_suite_numeric(rng) -> CheckResult:
    """k = -4 nu1 nu2 mu^2, |kappa| = |(nu1-nu2) mu|,
    K = eps (nu1 nu2 - lam^2 + mu^2), |H| = |nu1+nu2|/2, all from the
    numeric frame eight (finite-difference accuracy, 1e-6)."""
    samples = sample_surfaces(rng, n_per_preset=2)
    worst = 0.0
    for sm in samples:
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        if rep.normH < 1e-4 or rep.epsilon is None:
            continue
        fr = frame_invariants(patch, sm.u, sm.v)
        worst = max(worst, rel_gap(rep.k, -4.0 * fr.nu1 * fr.nu2 * fr.mu ** 2))
        worst = max(worst, rel_gap(abs(rep.kappa), abs((fr.nu1 - fr.nu2) * fr.mu)))
        worst = max(worst, rel_gap(rep.K, rep.epsilon * (fr.nu1 * fr.nu2
                                                         - fr.lam ** 2 + fr.mu ** 2)))
        worst = max(worst, rel_gap(rep.normH, abs(fr.nu1 + fr.nu2) / 2.0))
        if abs(fr.mu) > 1e-6:
            gap = rep.kappa ** 2 - rep.k
            worst = max(worst, rel_gap(rep.normH,
                                       math.sqrt(max(gap, 0.0)) / (2 * abs(fr.mu))))
    return CheckResult("kernel.relation_suite_numeric_frame", worst < 1e-6, worst)


def check_frame_zero_invariants(rng) -> CheckResult:
    """gamma1, lam, beta1 vanish on every rotational surface (numeric frame
    eight, finite-difference tolerance 1e-7)."""
    samples = sample_surfaces(rng, n_per_preset=2)
    worst = 0.0
    for sm in samples:
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        if rep.normH < 1e-4 or rep.epsilon is None:
            continue
        fr = frame_invariants(patch, sm.u, sm.v)
        worst = max(worst, abs(fr.gamma1), abs(fr.lam), abs(fr.beta1))
    return CheckResult("kernel.frame_zero_invariants", worst < 1e-7, worst)


def check_hyperbolic_region(rng) -> CheckResult:
    """Circle-profile surfaces have k = -4 a^2 b^2 / G^2 < 0: a hyperbolic
    sweep with two distinct asymptotic tangent directions (sign test)."""
    s = circle_profile_surface(1.0, 1.3, 0.6)
    patch = as_patch(s, u_range=(-1.2, 1.2))
    worst = -math.inf
    for u in np.linspace(0.0, 0.8, 9):
        for v in np.linspace(0.0, 6.0, 5):
            rep = invariants(patch, float(u), float(v))
            worst = max(worst, rep.k)
            if rep.point_class is not kernel.PointClass.HYPERBOLIC:
                return CheckResult("kernel.hyperbolic_region", False, worst)
    return CheckResult("kernel.hyperbolic_region", worst < 0.0, worst,
                       "max k over sweep (must stay negative)")


# ---------------------------------------------------------------------------
# rotational checks

def check_dual_path(rng) -> CheckResult:
    """Master property: closed-form (k, kappa, K) match the numeric kernel
    to 1e-8 relative at >= 100 in-domain samples (kappa up to the global
    per-surface frame sign)."""
    samples = sample_surfaces(rng, n_per_preset=13)
    worst = 0.0
    by_surface: dict[int, list[tuple[float, float]]] = {}
    rows = []
    for sm in samples:
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        kc, kapc, Kc = closed_invariants_kKkappa(sm.surface, sm.u)
        worst = max(worst, rel_gap(rep.k, kc), rel_gap(rep.K, Kc))
        by_surface.setdefault(id(sm.surface), []).append((kapc, rep.kappa))
        rows.append(sm.label)
    for pairs in by_surface.values():
        xs = np.array([p[0] for p in pairs])
        ys = np.array([p[1] for p in pairs])
        s = align_sign(xs, ys)
        for x, y in pairs:
            worst = max(worst, rel_gap(s * x, y))
    return CheckResult("rotational.dual_path_k_kappa_K", worst < 1e-8, worst,
                       f"{len(samples)} samples")


def check_chen_property(rng) -> CheckResult:
    """Allied mean curvature magnitude vanishes at every non-minimal point
    (lam = 0 in closed form: non-trivial Chen surfaces)."""
    samples = sample_surfaces(rng, n_per_preset=4)
    worst = 0.0
    n_checked = 0
    for sm in samples:
        fr = closed_invariants_frame8(sm.surface, sm.u)
        if abs(fr.nu1 + fr.nu2) / 2.0 < 1e-8:
            continue                      # minimal point: excluded
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        rep.frame8 = fr
        worst = max(worst, allied_mean_curvature_magnitude(rep))
        n_checked += 1
    return CheckResult("rotational.chen_allied_zero", worst < 1e-10, worst,
                       f"{n_checked} non-minimal samples")


def check_mean_curvature_norm(rng) -> CheckResult:
    samples = sample_surfaces(rng, n_per_preset=4)
    worst = 0.0
    for sm in samples:
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        fr = closed_invariants_frame8(sm.surface, sm.u)
        worst = max(worst, rel_gap(rep.normH, abs(fr.nu1 + fr.nu2) / 2.0))
    return CheckResult("rotational.normH_kernel_vs_closed", worst < 1e-8, worst)


def check_epsilon_by_type(rng) -> CheckResult:
    """<H,H> is positive on every first-type sample and negative on every
    second-type sample (spacelike vs timelike mean curvature vector)."""
    samples = sample_surfaces(rng, n_per_preset=4)
    for sm in samples:
        patch = _patch_for(sm)
        rep = invariants(patch, sm.u, sm.v)
        if rep.epsilon is None:
            if rep.normH < 1e-8:
                continue                  # minimal sample: eps undefined
            return CheckResult("rotational.epsilon_by_type", False, 0.0,
                               f"undefined eps at {sm.label}")
        want = 1 if sm.surface.kind is SurfaceKind.FIRST else -1
        if rep.epsilon != want:
            return CheckResult("rotational.epsilon_by_type", False, 0.0,
                               f"eps={rep.epsilon} at {sm.label}")
    return CheckResult("rotational.epsilon_by_type", True, 0.0)


def check_quadric_examples(rng) -> CheckResult:
    """The circle profile (a=1, alpha=beta=1) sweeps inside <z,z> = +1, the
    hyperbolic profile inside <z,z> = -1; both have flat normal connection
    (kappa = 0) and zero defining residual."""
    worst_member = 0.0
    worst_kappa = 0.0
    worst_res = 0.0
    for s, target, ures in ((circle_profile_surface(), 1.0, (-0.6, 0.6)),
                            (hyperbolic_profile_surface(), -1.0, (0.1, 1.4))):
        patch = as_patch(s, u_range=(ures[0] - 0.1, ures[1] + 0.1))
        for u in np.linspace(*ures, 20):
            rfn = residual_flat_normal(s, float(u))
            worst_res = max(worst_res, abs(rfn))
            for v in np.linspace(0.0, math.pi, 20):
                z = embed(s, float(u), float(v))
                worst_member = max(worst_member, abs(inner(z, z) - target))
            rep = invariants(patch, float(u), 0.7)
            worst_kappa = max(worst_kappa, abs(rep.kappa))
    ok = worst_member < 1e-12 and worst_kappa < 1e-8 and worst_res < 1e-12
    return CheckResult("rotational.quadric_examples", ok,
                       max(worst_member, worst_kappa, worst_res),
                       "membership, kappa == 0, defining residual")


def check_principal_parameters(rng) -> CheckResult:
    """as_patch output has F = 0 and M = 0 across a 20 x 20 grid."""
    s = circle_profile_surface(1.0, 1.4, 0.8)
    patch = as_patch(s, u_range=(-0.8, 0.8))
    worst = 0.0
    for u in np.linspace(-0.5, 0.5, 20):
        for v in np.linspace(0.0, math.pi, 20):
            ff = first_form(patch, float(u), float(v))
            sf = second_form(patch, float(u), float(v))
            worst = max(worst, abs(ff.F), abs(sf.M))
    return CheckResult("rotational.principal_parameters", worst < 1e-10, worst)


# ---------------------------------------------------------------------------
# meridian checks

def check_minimal_family(rng) -> CheckResult:
    """Closed-form minimal meridians: defining residual, nu1 + nu2 and
    kappa^2 - k all vanish; second-type |g| bounded by sqrt(A)/beta."""
    worst = 0.0
    configs = [(SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1, (0.6, 2.0)),
               (SurfaceKind.FIRST, 1.3, 0.7, 0.4, 0.8, -1, (0.8, 2.5)),
               (SurfaceKind.SECOND, 1.0, 2.0, 1.0, 0.0, 1, (0.5, 3.0)),
               (SurfaceKind.SECOND, 1.5, 0.9, 0.6, 0.4, -1, (0.4, 2.0))]
    for kind, al, be, A, C, eps, (lo, hi) in configs:
        m = minimal_meridian(kind, al, be, A, C, eps)
        s = RotationalSurface(kind, al, be, m)
        for u in np.linspace(lo, hi, 50):
            worst = max(worst, abs(residual_minimal(s, float(u))))
            fr = closed_invariants_frame8(s, float(u))
            worst = max(worst, abs(fr.nu1 + fr.nu2))
            k, kap, _ = closed_invariants_kKkappa(s, float(u))
            worst = max(worst, abs(kap * kap - k))
            if kind is SurfaceKind.SECOND:
                bound = abs(m.g(float(u))) - math.sqrt(A) / be
                worst = max(worst, max(bound, 0.0))
    return CheckResult("meridians.minimal_family", worst < 1e-8, worst,
                       "residual, nu1+nu2, kappa^2-k at 50 points x 4 configs")


def check_minimal_conservation(rng) -> CheckResult:
    """G^2 (mu^2 + nu1^2) is constant along minimal meridians and recovers
    A = c^2/(alpha^2+beta^2)."""
    worst = 0.0
    for kind, al, be, A, C, eps, (lo, hi) in (
            (SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1, (0.6, 2.0)),
            (SurfaceKind.SECOND, 1.0, 2.0, 1.0, 0.0, 1, (0.5, 3.0))):
        m = minimal_meridian(kind, al, be, A, C, eps)
        s = RotationalSurface(kind, al, be, m)
        c2, spread = conservation_check(s, np.linspace(lo, hi, 50))
        worst = max(worst, spread)
        A_rec = float(np.mean(c2)) / (al * al + be * be)
        worst = max(worst, rel_gap(A_rec, A, floor=1e-12))
    return CheckResult("meridians.minimal_conservation", worst < 1e-6, worst,
                       "spread of G^2(mu^2+nu1^2) and A recovery")


def check_minimal_first_derivative_system(rng) -> CheckResult:
    """After rescaling to unit speed, f'^2 = (a^2 f^2 - A)/(a^2 f^2 - b^2 g^2)
    and g'^2 = (A - b^2 g^2)/(a^2 f^2 - b^2 g^2) (first type; second type
    with f'^2 = (A + a^2 f^2)/(a^2 f^2 + b^2 g^2))."""
    worst = 0.0
    for kind, al, be, A, C, eps, (lo, hi) in (
            (SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1, (0.6, 2.0)),
            (SurfaceKind.SECOND, 1.2, 0.8, 0.5, 0.3, -1, (0.5, 2.0))):
        m = minimal_meridian(kind, al, be, A, C, eps)
        for u in np.linspace(lo, hi, 40):
            f, g = m.f(float(u)), m.g(float(u))
            fp, gp = m.fp(float(u)), m.gp(float(u))
            if kind is SurfaceKind.FIRST:
                speed2 = fp * fp + gp * gp
                den = al * al * f * f - be * be * g * g
                fp2_want = (al * al * f * f - A) / den
            else:
                speed2 = fp * fp - gp * gp
                den = al * al * f * f + be * be * g * g
                fp2_want = (A + al * al * f * f) / den
            gp2_want = (A - be * be * g * g) / den
            worst = max(worst, abs(fp * fp / speed2 - fp2_want))
            worst = max(worst, abs(gp * gp / speed2 - gp2_want))
    return CheckResult("meridians.minimal_first_derivative_system",
                       worst < 1e-7, worst)


def check_parabolic_cases(rng) -> CheckResult:
    """k vanishes for the three parabolic families; the ruled non-developable
    case keeps kappa away from zero, the power-law case kappa and K."""
    worst_k = 0.0
    ok = True
    detail = []
    m1 = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.DEVELOPABLE_RULED,
                            alpha=1.5, beta=1.0, a=0.4)
    s1 = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m1)
    for u in np.linspace(0.5, 2.0, 12):
        k, kap, K = closed_invariants_kKkappa(s1, float(u))
        worst_k = max(worst_k, abs(k), abs(kap), abs(K))
    detail.append("case1 k=kappa=K=0")

    m2 = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.NON_DEVELOPABLE_RULED,
                            alpha=1.5, beta=1.0, a=0.3, b=0.2)
    s2 = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m2)
    for u in np.linspace(1.0, 2.5, 12):
        k, kap, _ = closed_invariants_kKkappa(s2, float(u))
        worst_k = max(worst_k, abs(k))
        ok = ok and abs(kap) > 1e-4
    detail.append("case2 k=0, kappa != 0")

    m3 = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.POWER_LAW,
                            alpha=2.0, beta=1.0, c=1.0)
    s3 = RotationalSurface(SurfaceKind.FIRST, 2.0, 1.0, m3)
    for u in (1.2, 1.5, 2.0):
        k, kap, K = closed_invariants_kKkappa(s3, float(u))
        worst_k = max(worst_k, abs(k))
        ok = ok and abs(kap) > 1e-4 and abs(K) > 1e-4
    detail.append("case3 k=0, kappa,K != 0")

    m4 = parabolic_meridian(SurfaceKind.SECOND, ParabolicCase.POWER_LAW,
                            alpha=2.0, beta=1.0, c=0.5)
    s4 = RotationalSurface(SurfaceKind.SECOND, 2.0, 1.0, m4)
    for u in (1.2, 1.5, 2.0):
        k, kap, K = closed_invariants_kKkappa(s4, float(u))
        worst_k = max(worst_k, abs(k))
        ok = ok and abs(kap) > 1e-4
    detail.append("second-type case3 k=0")
    return CheckResult("meridians.parabolic_cases", ok and worst_k < 1e-10,
                       worst_k, "; ".join(detail))


def check_ode_reproduces_circle(rng) -> CheckResult:
    """Flat-normal trajectory seeded on the circle profile reproduces
    f(u) = sqrt(1 - u^2) pointwise and stops at the admissibility boundary
    u = 1/sqrt(2)."""
    u0 = math.sin(0.5)
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u0=u0, f0=math.cos(0.5), fp0=-math.tan(0.5), u_stop=0.75)
    sol = solve_ode(p)
    err = float(np.max(np.abs(sol.fs - np.sqrt(1.0 - sol.us ** 2))))
    ok = (err < 1e-6 and sol.termination is TerminationReason.SINGULARITY
          and abs(sol.us[-1] - 1.0 / math.sqrt(2.0)) < 1e-3)
    down = solve_ode(OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                                u0=u0, f0=math.cos(0.5), fp0=-math.tan(0.5),
                                u_stop=0.05))
    err2 = float(np.max(np.abs(down.fs - np.sqrt(1.0 - down.us ** 2))))
    return CheckResult("meridians.ode_reproduces_circle",
                       ok and err2 < 1e-6, max(err, err2),
                       f"stopped at u={sol.us[-1]:.6f} ({sol.termination.value})")


def check_ode_reproduces_hyperbola(rng) -> CheckResult:
    """Second-type flat-normal trajectory seeded on the hyperbolic profile
    reproduces f(u) = sqrt(u^2 - 1)."""
    u0 = math.cosh(0.5)
    p = OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u0=u0, f0=math.sinh(0.5), fp0=1.0 / math.tanh(0.5),
                   u_stop=2.0)
    sol = solve_ode(p)
    err = float(np.max(np.abs(sol.fs - np.sqrt(sol.us ** 2 - 1.0))))
    ok = err < 1e-6 and sol.termination is TerminationReason.REACHED_BOUNDARY
    return CheckResult("meridians.ode_reproduces_hyperbola", ok, err)


_GENERIC_PROBLEMS = (
    ("first/flat", OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                              u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2)),
    ("first/flat-normal", OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL,
                                     2.0, 1.0, u0=0.2, f0=1.0, fp0=0.1,
                                     u_stop=1.2)),
    ("second/flat", OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT, 1.3, 0.8,
                               u0=1.0, f0=0.5, fp0=1.8, u_stop=2.5)),
    ("second/flat-normal", OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL,
                                      1.3, 0.8, u0=1.0, f0=0.5, fp0=1.8,
                                      u_stop=2.5)),
)


def check_ode_generic_residuals(rng) -> CheckResult:
    """Generic flat / flat-normal trajectories satisfy their defining
    residual below 1e-6 at all interior nodes of the returned curve, and a
    flat-normal solution also has nu1 = nu2 pointwise."""
    worst = 0.0
    for label, p in _GENERIC_PROBLEMS:
        sol = solve_ode(p)
        m = sol.to_meridian()
        s = RotationalSurface(p.kind, p.alpha, p.beta, m)
        fun = residual_flat if p.target is OdeTarget.FLAT else residual_flat_normal
        for u in m.nodes[2:-2]:
            worst = max(worst, abs(fun(s, float(u))))
            if p.target is OdeTarget.FLAT_NORMAL:
                fr = closed_invariants_frame8(s, float(u))
                worst = max(worst, abs(fr.nu1 - fr.nu2))
    return CheckResult("meridians.ode_generic_residuals", worst < 1e-6, worst,
                       "defining residuals at interior nodes")


def check_ode_tolerance_halving(rng) -> CheckResult:
    """Halving rel_tol moves the trajectory endpoint by < 10 rel_tol."""
    worst = 0.0
    for label, p in _GENERIC_PROBLEMS[:2]:
        base = solve_ode(p)
        import dataclasses
        half = solve_ode(dataclasses.replace(p, rel_tol=p.rel_tol / 2.0))
        if (base.termination is not TerminationReason.REACHED_BOUNDARY
                or half.termination is not TerminationReason.REACHED_BOUNDARY):
            continue
        worst = max(worst, abs(base.fs[-1] - half.fs[-1]) / (10.0 * p.rel_tol))
    return CheckResult("meridians.ode_tolerance_halving", worst < 1.0, worst,
                       "|df(u_stop)| / (10 rel_tol)")


def check_speed_normalization(rng) -> CheckResult:
    from .rotational import circle_meridian, hyperbolic_meridian
    r1 = normalized_speed_residual(circle_meridian(1.0), SurfaceKind.FIRST,
                                   np.linspace(0.0, 1.5, 30))
    r2 = normalized_speed_residual(hyperbolic_meridian(1.0), SurfaceKind.SECOND,
                                   np.linspace(0.0, 1.5, 30))
    r3 = normalized_speed_residual(line_meridian(1.0, 1.0), SurfaceKind.FIRST,
                                   np.linspace(0.5, 2.0, 10))
    ok = r1 < 1e-12 and r2 < 1e-12 and abs(r3 - 1.0) < 1e-12
    return CheckResult("meridians.speed_normalization", ok, max(r1, r2))


# ---------------------------------------------------------------------------
# driver

_CHECKS = {
    "minkowski": [check_inner_bilinearity, check_orientation_alternating,
                  check_normal_frame_gram, check_causal_examples],
    "kernel": [check_fd_convergence, check_product_patch, check_plane_patch,
               check_relation_suite_numeric, check_frame_zero_invariants,
               check_hyperbolic_region],
    "rotational": [check_dual_path, check_chen_property,
                   check_mean_curvature_norm, check_epsilon_by_type,
                   check_quadric_examples, check_principal_parameters],
    "meridians": [check_minimal_family, check_minimal_conservation,
                  check_minimal_first_derivative_system, check_parabolic_cases,
                  check_ode_reproduces_circle, check_ode_reproduces_hyperbola,
                  check_ode_generic_residuals, check_ode_tolerance_halving,
                  check_speed_normalization],
}

SCOPES = ("all",) + tuple(_CHECKS)


def run_verify(scope: str = "all", seed: int = 0) -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {SCOPES}")
    names = list(_CHECKS) if scope == "all" else [scope]
    results = []
    for module in names:
        for fn in _CHECKS[module]:
            rng = np.random.default_rng(seed)   # each check sees the same seed
            results.append(fn(rng))
    return results
