"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS/FAIL lines.
"""
import contextlib
import dataclasses
import math

import numpy as np
import pytest

from minksurf.kernel import (allied_mean_curvature_magnitude, first_form,
                             invariants, second_form)
from minksurf.meridians import (OdeProblem, OdeTarget, ParabolicCase,
                                conservation_check, minimal_meridian,
                                parabolic_meridian, solve_ode)
from minksurf.minkowski import inner
from minksurf.rotational import (RotationalSurface, SurfaceKind, as_patch,
                                 circle_profile_surface,
                                 closed_invariants_frame8,
                                 closed_invariants_kKkappa, embed,
                                 hyperbolic_profile_surface, residual_flat,
                                 residual_flat_normal)
from minksurf.verify import align_sign, rel_gap, sample_surfaces

SEED = 12345


@contextlib.contextmanager
def criterion(label):
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {label}: FAIL")
        raise
    print(f"ACCEPTANCE {label}: PASS")


@pytest.fixture(scope="module")
def samples():
    rng = np.random.default_rng(SEED)
    out = sample_surfaces(rng, n_per_preset=13)
    assert len(out) >= 100
    return out


def test_criterion_1_dual_path(samples):
    """Closed-form k, kappa, K match the numeric kernel to 1e-8 relative at
    >= 100 seeded in-domain samples across all presets and both types."""
    with criterion("1 dual-path oracle equivalence (1e-8)"):
        worst = 0.0
        per_surface = {}
        for sm in samples:
            patch = as_patch(sm.surface, u_range=sm.surface.meridian.domain,
                             v_range=(-10.0, 10.0))
            rep = invariants(patch, sm.u, sm.v)
            kc, kapc, Kc = closed_invariants_kKkappa(sm.surface, sm.u)
            worst = max(worst, rel_gap(rep.k, kc), rel_gap(rep.K, Kc))
            per_surface.setdefault(id(sm.surface), []).append((kapc, rep.kappa))
        # kappa: one global frame sign per surface sweep
        for pairs in per_surface.values():
            s = align_sign([p[0] for p in pairs], [p[1] for p in pairs])
            for closed, numeric in pairs:
                worst = max(worst, rel_gap(s * closed, numeric))
        assert worst < 1e-8, f"worst relative gap {worst:.3e}"


def test_criterion_2_frame_relations(samples):
    """k = -4 nu1 nu2 mu^2, |kappa| = |(nu1-nu2) mu|,
    K = eps (nu1 nu2 - lam^2 + mu^2) and |H| = |nu1+nu2|/2 hold to 1e-6
    relative at the same samples, using the closed-form frame invariants."""
    with criterion("2 frame-relation suite (1e-6)"):
        worst = 0.0
        for sm in samples:
            fr = closed_invariants_frame8(sm.surface, sm.u)
            kc, kapc, Kc = closed_invariants_kKkappa(sm.surface, sm.u)
            eps = 1 if sm.surface.kind is SurfaceKind.FIRST else -1
            worst = max(worst, rel_gap(kc, -4 * fr.nu1 * fr.nu2 * fr.mu ** 2))
            worst = max(worst, rel_gap(abs(kapc), abs((fr.nu1 - fr.nu2) * fr.mu)))
            worst = max(worst, rel_gap(Kc, eps * (fr.nu1 * fr.nu2
                                                  - fr.lam ** 2 + fr.mu ** 2)))
            patch = as_patch(sm.surface, u_range=sm.surface.meridian.domain,
                             v_range=(-10.0, 10.0))
            rep = invariants(patch, sm.u, sm.v)
            worst = max(worst, rel_gap(rep.normH, abs(fr.nu1 + fr.nu2) / 2))
            if abs(fr.mu) > 1e-6:
                gap = kapc ** 2 - kc
                worst = max(worst, rel_gap(rep.normH,
                                           math.sqrt(max(gap, 0.0))
                                           / (2 * abs(fr.mu))))
        assert worst < 1e-6, f"worst relative gap {worst:.3e}"


def test_criterion_3_quadric_examples():
    """kappa vanishes (1e-8) on a 20 x 20 grid of each example surface and
    the surfaces lie on the unit quadrics <z,z> = +/-1 to 1e-12."""
    with criterion("3 example surfaces: kappa == 0, quadric membership"):
        worst_kappa = 0.0
        worst_member = 0.0
        cases = ((circle_profile_surface(1.0, 1.0, 1.0), 1.0, (-0.6, 0.6)),
                 (hyperbolic_profile_surface(1.0, 1.0, 1.0), -1.0, (0.1, 1.4)))
        for s, target, (ulo, uhi) in cases:
            patch = as_patch(s, u_range=(ulo - 0.05, uhi + 0.05))
            for u in np.linspace(ulo, uhi, 20):
                for v in np.linspace(0.0, math.pi, 20):
                    z = embed(s, float(u), float(v))
                    worst_member = max(worst_member, abs(inner(z, z) - target))
                    rep = invariants(patch, float(u), float(v))
                    worst_kappa = max(worst_kappa, abs(rep.kappa))
        assert worst_kappa < 1e-8, f"kappa {worst_kappa:.3e}"
        assert worst_member < 1e-12, f"membership {worst_member:.3e}"


def test_criterion_4_parabolic_classification():
    """Case (i): k = kappa = K = 0 below 1e-10.  Case (ii): k = 0 with
    |kappa| > 1e-4.  Case (iii) (alpha=2, beta=1, c=1): k = 0 with |kappa|
    and |K| above 1e-4 at u = 1.5."""
    with criterion("4 parabolic classification"):
        m1 = parabolic_meridian(SurfaceKind.FIRST,
                                ParabolicCase.DEVELOPABLE_RULED,
                                alpha=1.5, beta=1.0, a=0.4)
        s1 = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m1)
        for u in np.linspace(0.5, 2.5, 9):
            k, kap, K = closed_invariants_kKkappa(s1, float(u))
            assert max(abs(k), abs(kap), abs(K)) < 1e-10
        m2 = parabolic_meridian(SurfaceKind.FIRST,
                                ParabolicCase.NON_DEVELOPABLE_RULED,
                                alpha=1.5, beta=1.0, a=0.3, b=0.2)
        s2 = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m2)
        for u in np.linspace(1.0, 2.5, 9):
            k, kap, _ = closed_invariants_kKkappa(s2, float(u))
            assert abs(k) < 1e-10
            assert abs(kap) > 1e-4
        m3 = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.POWER_LAW,
                                alpha=2.0, beta=1.0, c=1.0)
        s3 = RotationalSurface(SurfaceKind.FIRST, 2.0, 1.0, m3)
        k, kap, K = closed_invariants_kKkappa(s3, 1.5)
        assert abs(k) < 1e-10
        assert abs(kap) > 1e-4 and abs(K) > 1e-4


def test_criterion_5_minimal_meridians():
    """Closed-form minimal meridians of both types: |nu1 + nu2| and
    |kappa^2 - k| below 1e-8 at 50 samples; conservation quantity
    G^2(mu^2 + nu1^2) with relative spread < 1e-6, recovering
    A = c^2/(alpha^2 + beta^2) to 1e-6."""
    with criterion("5 minimal meridians + conservation"):
        for kind, al, be, A, C, eps, (lo, hi) in (
                (SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1, (0.6, 2.0)),
                (SurfaceKind.SECOND, 1.0, 2.0, 1.0, 0.0, 1, (0.5, 3.0))):
            m = minimal_meridian(kind, al, be, A, C, eps)
            s = RotationalSurface(kind, al, be, m)
            us = np.linspace(lo, hi, 50)
            for u in us:
                fr = closed_invariants_frame8(s, float(u))
                assert abs(fr.nu1 + fr.nu2) < 1e-8
                k, kap, _ = closed_invariants_kKkappa(s, float(u))
                assert abs(kap ** 2 - k) < 1e-8
            c2, spread = conservation_check(s, us)
            assert spread < 1e-6, f"spread {spread:.3e}"
            A_rec = float(np.mean(c2)) / (al * al + be * be)
            assert rel_gap(A_rec, A, floor=1e-12) < 1e-6


def test_criterion_6_ode_solver():
    """Flat-normal trajectories seeded on the example profiles reproduce
    sqrt(1 - u^2) / sqrt(u^2 - 1) to 1e-6 pointwise; generic flat and
    flat-normal runs meet their defining residuals below 1e-6 at interior
    nodes; halving rel_tol moves the endpoint by < 10 rel_tol."""
    with criterion("6 ODE solver validation"):
        sol = solve_ode(OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL,
                                   1.0, 1.0, u0=math.sin(0.5),
                                   f0=math.cos(0.5), fp0=-math.tan(0.5),
                                   u_stop=0.75))
        assert np.max(np.abs(sol.fs - np.sqrt(1 - sol.us ** 2))) < 1e-6
        sol = solve_ode(OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL,
                                   1.0, 1.0, u0=math.cosh(0.5),
                                   f0=math.sinh(0.5), fp0=1 / math.tanh(0.5),
                                   u_stop=2.0))
        assert np.max(np.abs(sol.fs - np.sqrt(sol.us ** 2 - 1))) < 1e-6
        for kind, al, be, ic in ((SurfaceKind.FIRST, 2.0, 1.0,
                                  dict(u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2)),
                                 (SurfaceKind.SECOND, 1.3, 0.8,
                                  dict(u0=1.0, f0=0.5, fp0=1.8, u_stop=2.5))):
            for target, fun in ((OdeTarget.FLAT, residual_flat),
                                (OdeTarget.FLAT_NORMAL, residual_flat_normal)):
                p = OdeProblem(kind, target, al, be, **ic)
                m = solve_ode(p).to_meridian()
                surf = RotationalSurface(kind, al, be, m)
                worst = max(abs(fun(surf, float(u))) for u in m.nodes[2:-2])
                assert worst < 1e-6, f"{kind} {target}: {worst:.3e}"
        p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                       u0=0.2, f0=1.0, fp0=0.1, u_stop=1.0, rel_tol=1e-9)
        fa = solve_ode(p).fs[-1]
        fb = solve_ode(dataclasses.replace(p, rel_tol=5e-10)).fs[-1]
        assert abs(fa - fb) < 10 * p.rel_tol


def test_criterion_7_chen_property(samples):
    """Allied mean-curvature magnitude vanishes (< 1e-10) at every
    non-minimal sample of every generated surface."""
    with criterion("7 Chen property (allied magnitude == 0)"):
        pool = list(samples)
        # add ODE-generated surfaces to the pool
        for kind, target, al, be, ic in (
                (SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                 dict(u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2)),
                (SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL, 1.3, 0.8,
                 dict(u0=1.0, f0=0.5, fp0=1.8, u_stop=2.5))):
            m = solve_ode(OdeProblem(kind, target, al, be, **ic)).to_meridian()
            s = RotationalSurface(kind, al, be, m)
            lo, hi = m.domain
            for u in np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 5):
                pool.append(type(samples[0])(s, float(u), 0.5, "ode"))
        n_checked = 0
        worst = 0.0
        for sm in pool:
            fr = closed_invariants_frame8(sm.surface, sm.u)
            if abs(fr.nu1 + fr.nu2) / 2 < 1e-8:
                continue                      # minimal point, excluded
            patch = as_patch(sm.surface, u_range=sm.surface.meridian.domain,
                             v_range=(-10.0, 10.0))
            rep = invariants(patch, sm.u, sm.v)
            rep.frame8 = fr
            worst = max(worst, allied_mean_curvature_magnitude(rep))
            n_checked += 1
        assert n_checked > 60
        assert worst < 1e-10, f"worst allied magnitude {worst:.3e}"


def test_criterion_8_fd_convergence():
    """Finite-difference mode reproduces the analytic fundamental forms with
    observed order >= 1.9 between steps h and h/2."""
    with criterion("8 finite-difference convergence order >= 1.9"):
        s = circle_profile_surface(1.0, 1.2, 0.7)
        patch = as_patch(s, u_range=(-1.0, 1.0))
        min_order = math.inf
        for (u, v) in ((0.3, 0.5), (0.15, 2.0), (-0.2, 1.1)):
            ff = first_form(patch, u, v)
            sf = second_form(patch, u, v)
            exact = np.array([ff.E, ff.F, ff.G, sf.L, sf.M, sf.N])
            err = {}
            for h in (1e-3, 5e-4):
                fd = patch.with_finite_differences(h)
                f2, s2 = first_form(fd, u, v), second_form(fd, u, v)
                err[h] = np.abs(np.array([f2.E, f2.F, f2.G,
                                          s2.L, s2.M, s2.N]) - exact)
            for a, b in zip(err[1e-3], err[5e-4]):
                if a < 1e-8:     # round-off dominated, order unmeasurable
                    continue
                min_order = min(min_order, math.log2(a / b))
        assert min_order >= 1.9, f"observed order {min_order:.3f}"
