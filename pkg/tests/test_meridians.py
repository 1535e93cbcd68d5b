import dataclasses
import math

import numpy as np
import pytest

from minksurf.errors import DomainViolation, EmptyDomain, NotMinimal
from minksurf.meridians import (OdeProblem, OdeTarget, ParabolicCase,
                                TerminationReason, conservation_check,
                                load_meridian_csv, minimal_meridian,
                                normalized_speed_residual, parabolic_meridian,
                                save_meridian_csv, solve_ode)
from minksurf.rotational import (RotationalSurface, SurfaceKind,
                                 circle_meridian, closed_invariants_frame8,
                                 closed_invariants_kKkappa,
                                 hyperbolic_meridian, line_meridian,
                                 residual_flat, residual_flat_normal,
                                 residual_minimal)


# ---------------------------------------------------------------------------
# minimal meridians

def test_minimal_sine_argument_zero():
    # choose C so the sine argument vanishes at f0: then g(f0) = 0
    al, be, A = 1.0, 1.0, 0.25
    f0 = 1.0
    r0 = math.sqrt(al * al * f0 * f0 - A)
    C = -(be / al) * math.log(abs(al * f0 + r0))
    m = minimal_meridian(SurfaceKind.FIRST, al, be, A, C, 1)
    assert abs(m.g(f0)) < 1e-14


def test_minimal_first_type_residual():
    m = minimal_meridian(SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1)
    s = RotationalSurface(SurfaceKind.FIRST, 1.0, 1.0, m)
    for u in np.linspace(0.6, 2.0, 50):
        assert abs(residual_minimal(s, float(u))) < 1e-8
        fr = closed_invariants_frame8(s, float(u))
        assert abs(fr.nu1 + fr.nu2) < 1e-8


def test_minimal_second_type_amplitude_bound():
    # |g| <= sqrt(A)/beta = 0.5
    m = minimal_meridian(SurfaceKind.SECOND, 1.0, 2.0, 1.0, 0.0, 1)
    for u in np.linspace(-2.0, 3.0, 60):
        assert abs(m.g(float(u))) <= 0.5 + 1e-14


def test_minimal_branch_sign():
    mp = minimal_meridian(SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, 1)
    mm = minimal_meridian(SurfaceKind.FIRST, 1.0, 1.0, 0.25, 0.0, -1)
    assert mp.g(1.3) != mm.g(1.3)       # distinct branches, both minimal
    for m in (mp, mm):
        s = RotationalSurface(SurfaceKind.FIRST, 1.0, 1.0, m)
        assert abs(residual_minimal(s, 1.3)) < 1e-10


def test_minimal_domain_and_errors():
    m = minimal_meridian(SurfaceKind.FIRST, 2.0, 1.0, 1.0, 0.0, 1)
    assert math.isclose(m.domain[0], 0.5)          # sqrt(A)/alpha
    with pytest.raises(EmptyDomain):
        minimal_meridian(SurfaceKind.FIRST, 2.0, 1.0, 1.0, 0.0, 1,
                         f_range=(0.0, 0.4))
    with pytest.raises(ValueError):
        minimal_meridian(SurfaceKind.FIRST, 1.0, 1.0, -1.0, 0.0, 1)
    with pytest.raises(ValueError):
        minimal_meridian(SurfaceKind.FIRST, 1.0, 1.0, 1.0, 0.0, 2)


def test_conservation_law():
    al, be, A = 1.0, 1.0, 0.25
    m = minimal_meridian(SurfaceKind.FIRST, al, be, A, 0.0, 1)
    s = RotationalSurface(SurfaceKind.FIRST, al, be, m)
    c2, spread = conservation_check(s, np.linspace(0.6, 2.0, 50))
    assert spread < 1e-6
    A_rec = float(np.mean(c2)) / (al * al + be * be)
    assert math.isclose(A_rec, A, rel_tol=1e-6)


def test_conservation_rejects_non_minimal():
    s = RotationalSurface(SurfaceKind.FIRST, 1.0, 1.0, circle_meridian(1.0))
    with pytest.raises(NotMinimal):
        conservation_check(s, np.linspace(0.1, 0.5, 5))


# ---------------------------------------------------------------------------
# parabolic meridians

def test_parabolic_developable():
    m = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.DEVELOPABLE_RULED,
                           alpha=1.5, beta=1.0, a=0.4)
    s = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m)
    for u in (0.5, 1.0, 3.0):
        assert closed_invariants_kKkappa(s, u) == (0.0, 0.0, 0.0)


def test_parabolic_non_developable():
    m = parabolic_meridian(SurfaceKind.FIRST,
                           ParabolicCase.NON_DEVELOPABLE_RULED,
                           alpha=1.5, beta=1.0, a=0.3, b=0.2)
    s = RotationalSurface(SurfaceKind.FIRST, 1.5, 1.0, m)
    for u in (1.0, 2.0):
        k, kap, _ = closed_invariants_kKkappa(s, u)
        assert k == 0.0 and abs(kap) > 1e-4


def test_parabolic_power_law_case():
    m = parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.POWER_LAW,
                           alpha=2.0, beta=1.0, c=1.0)
    s = RotationalSurface(SurfaceKind.FIRST, 2.0, 1.0, m)
    k, kap, K = closed_invariants_kKkappa(s, 1.5)
    assert abs(k) < 1e-10
    assert abs(kap) > 1e-4 and abs(K) > 1e-4


def test_parabolic_validation():
    with pytest.raises(ValueError):
        parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.DEVELOPABLE_RULED,
                           alpha=1.0, beta=1.0, a=0.0)
    with pytest.raises(ValueError):
        parabolic_meridian(SurfaceKind.FIRST,
                           ParabolicCase.NON_DEVELOPABLE_RULED,
                           alpha=1.0, beta=1.0, a=0.5, b=0.0)
    with pytest.raises(DomainViolation):
        parabolic_meridian(SurfaceKind.FIRST, ParabolicCase.DEVELOPABLE_RULED,
                           alpha=1.0, beta=1.0, a=2.0)   # |a| >= alpha/beta
    with pytest.raises(DomainViolation):
        parabolic_meridian(SurfaceKind.SECOND, ParabolicCase.DEVELOPABLE_RULED,
                           alpha=1.0, beta=1.0, a=1.5)   # needs |a| < 1


# ---------------------------------------------------------------------------
# ODE solving

CIRCLE_START = dict(u0=math.sin(0.5), f0=math.cos(0.5), fp0=-math.tan(0.5))


def test_ode_circle_reproduction_and_singularity():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u_stop=0.75, **CIRCLE_START)
    sol = solve_ode(p)
    assert sol.termination is TerminationReason.SINGULARITY
    assert "alpha^2 f^2 - beta^2 u^2" in sol.detail
    assert abs(sol.us[-1] - 1 / math.sqrt(2)) < 1e-3
    assert np.max(np.abs(sol.fs - np.sqrt(1 - sol.us ** 2))) < 1e-6


def test_ode_circle_decreasing_direction():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u_stop=0.05, **CIRCLE_START)
    sol = solve_ode(p)
    assert sol.termination is TerminationReason.REACHED_BOUNDARY
    assert sol.us[-1] == pytest.approx(0.05, abs=1e-12)
    assert np.max(np.abs(sol.fs - np.sqrt(1 - sol.us ** 2))) < 1e-6


def test_ode_hyperbola_reproduction():
    p = OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u0=math.cosh(0.5), f0=math.sinh(0.5),
                   fp0=1 / math.tanh(0.5), u_stop=2.0)
    sol = solve_ode(p)
    assert sol.termination is TerminationReason.REACHED_BOUNDARY
    assert np.max(np.abs(sol.fs - np.sqrt(sol.us ** 2 - 1))) < 1e-6


def test_ode_generic_flat_residuals():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                   u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2)
    sol = solve_ode(p)
    m = sol.to_meridian()
    s = RotationalSurface(SurfaceKind.FIRST, 2.0, 1.0, m)
    worst = max(abs(residual_flat(s, float(u))) for u in m.nodes[2:-2])
    assert worst < 1e-6


def test_ode_generic_flat_normal_residuals_and_window():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 2.0, 1.0,
                   u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2)
    sol = solve_ode(p)
    assert sol.termination is TerminationReason.SINGULARITY
    m = sol.to_meridian()
    # certified window ends strictly before the singular boundary
    assert m.domain[1] < sol.us[-1]
    s = RotationalSurface(SurfaceKind.FIRST, 2.0, 1.0, m)
    worst = max(abs(residual_flat_normal(s, float(u))) for u in m.nodes[2:-2])
    assert worst < 1e-6


def test_ode_second_type_generic():
    for target in (OdeTarget.FLAT, OdeTarget.FLAT_NORMAL):
        p = OdeProblem(SurfaceKind.SECOND, target, 1.3, 0.8,
                       u0=1.0, f0=0.5, fp0=1.8, u_stop=2.5)
        sol = solve_ode(p)
        m = sol.to_meridian()
        s = RotationalSurface(SurfaceKind.SECOND, 1.3, 0.8, m)
        fun = residual_flat if target is OdeTarget.FLAT else residual_flat_normal
        worst = max(abs(fun(s, float(u))) for u in m.nodes[2:-2])
        assert worst < 1e-6


def test_ode_tolerance_halving():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                   u0=0.2, f0=1.0, fp0=0.1, u_stop=1.0, rel_tol=1e-9)
    f_a = solve_ode(p).fs[-1]
    f_b = solve_ode(dataclasses.replace(p, rel_tol=5e-10)).fs[-1]
    assert abs(f_a - f_b) < 10 * p.rel_tol


def test_ode_initial_data_validation():
    with pytest.raises(DomainViolation):
        # alpha^2 f^2 - beta^2 u^2 < 0 at the initial point
        solve_ode(OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL,
                             1.0, 1.0, u0=1.0, f0=0.5, fp0=0.0, u_stop=2.0))
    with pytest.raises(DomainViolation):
        # second type needs |f'| > 1
        solve_ode(OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL,
                             1.0, 1.0, u0=1.0, f0=0.5, fp0=0.5, u_stop=2.0))
    with pytest.raises(DomainViolation):
        # flat target: initial point on alpha^2 f + beta^2 u f' = 0
        solve_ode(OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 1.0, 1.0,
                             u0=1.0, f0=1.0, fp0=-1.0, u_stop=2.0))
    with pytest.raises(ValueError):
        solve_ode(OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 1.0, 1.0,
                             u0=0.2, f0=1.0, fp0=0.1, u_stop=0.2))


def test_ode_second_type_spacelike_barrier():
    # march towards u = 1 where f' -> inf on the hyperbola: must not cross
    p = OdeProblem(SurfaceKind.SECOND, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u0=math.cosh(0.5), f0=math.sinh(0.5),
                   fp0=1 / math.tanh(0.5), u_stop=0.9)
    sol = solve_ode(p)
    assert sol.termination in (TerminationReason.SINGULARITY,
                               TerminationReason.STEP_UNDERFLOW)
    assert sol.us[-1] > 0.999


def test_ode_max_steps():
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT, 2.0, 1.0,
                   u0=0.2, f0=1.0, fp0=0.1, u_stop=1.2, max_steps=10)
    sol = solve_ode(p)
    assert sol.termination is TerminationReason.MAX_STEPS
    assert len(sol.us) == 11


# ---------------------------------------------------------------------------
# diagnostics and files

def test_normalized_speed_residual():
    us = np.linspace(0.0, 1.5, 30)
    assert normalized_speed_residual(circle_meridian(1.0), SurfaceKind.FIRST,
                                     us) < 1e-12
    assert normalized_speed_residual(hyperbolic_meridian(1.0),
                                     SurfaceKind.SECOND, us) < 1e-12
    r = normalized_speed_residual(line_meridian(1.0, 1.0), SurfaceKind.FIRST,
                                  np.linspace(0.5, 2.0, 5))
    assert math.isclose(r, 1.0)


def test_meridian_csv_roundtrip(tmp_path):
    p = OdeProblem(SurfaceKind.FIRST, OdeTarget.FLAT_NORMAL, 1.0, 1.0,
                   u_stop=0.7, **CIRCLE_START)
    sol = solve_ode(p)
    m = sol.to_meridian()
    path = tmp_path / "meridian.csv"
    save_meridian_csv(path, m.nodes, [m.f(float(u)) for u in m.nodes],
                      [m.fp(float(u)) for u in m.nodes],
                      meta={"family": "flat-normal", "kind": "first",
                            "alpha": 1.0, "beta": 1.0})
    m2, meta = load_meridian_csv(path)
    assert meta["family"] == "flat-normal"
    assert meta["chart"] == "graph-f"
    u_mid = 0.55
    assert abs(m2.f(u_mid) - math.sqrt(1 - u_mid ** 2)) < 1e-6
    assert abs(m2.g(u_mid) - u_mid) == 0.0


def test_meridian_csv_explicit_chart(tmp_path):
    us = np.linspace(0.0, 1.0, 200)
    path = tmp_path / "m.csv"
    save_meridian_csv(path, us, np.cos(us), -np.sin(us),
                      gs=np.sin(us), gps=np.cos(us), meta={"family": "circle"})
    m, meta = load_meridian_csv(path)
    assert meta["chart"] == "explicit"
    assert abs(m.g(0.4) - math.sin(0.4)) < 1e-10
