import math

import pytest
from hypothesis import given, settings, strategies as st

from minksurf.errors import DegenerateTangentPlane
from minksurf.minkowski import (E1, E2, E3, E4, ZERO, CausalClass,
                                SpacetimeVector, causal_class, inner,
                                normal_frame, orientation_det)

finite = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


def vec(draw_tuple):
    return SpacetimeVector(*draw_tuple)


vectors = st.tuples(finite, finite, finite, finite).map(vec)


def test_inner_basis():
    assert inner(E1, E1) == 1.0
    assert inner(E2, E2) == 1.0
    assert inner(E3, E3) == 1.0
    assert inner(E4, E4) == -1.0
    assert inner(E1, E4) == 0.0


def test_inner_null_vector():
    n = SpacetimeVector(1.0, 0.0, 0.0, 1.0)
    assert inner(n, n) == 0.0


@settings(deadline=None, derandomize=True)
@given(vectors, vectors, vectors, finite, finite)
def test_inner_bilinear(u, v, w, a, b):
    lhs = inner(a * u + b * v, w)
    rhs = a * inner(u, w) + b * inner(v, w)
    scale = max(abs(lhs), abs(rhs), 1.0)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_causal_classes():
    assert causal_class(E2) is CausalClass.SPACELIKE
    assert causal_class(E4) is CausalClass.TIMELIKE
    assert causal_class(SpacetimeVector(3.0, 0.0, 0.0, 3.0)) is CausalClass.LIGHTLIKE
    assert causal_class(ZERO) is CausalClass.ZERO
    # tolerance band: tiny but nonzero vector with tiny norm is zero-class
    assert causal_class(SpacetimeVector(1e-12, 0, 0, 0)) is CausalClass.ZERO


def test_orientation_examples():
    assert orientation_det(E1, E2, E3, E4) == 1.0
    assert orientation_det(E2, E1, E3, E4) == -1.0
    assert orientation_det(2.0 * E1, E2, E3, E4) == 2.0


@settings(deadline=None, derandomize=True)
@given(st.tuples(vectors, vectors, vectors, vectors))
def test_orientation_alternating_exact(vs):
    a, b, c, d = vs
    base = orientation_det(a, b, c, d)
    assert orientation_det(b, a, c, d) == -base
    assert orientation_det(a, c, b, d) == -base
    assert orientation_det(a, b, d, c) == -base
    assert orientation_det(a, b, a, d) == 0.0


def test_normal_frame_coordinate_plane():
    n1, n2 = normal_frame(E1, E2)
    assert n1 == E3 and n2 == E4


def test_normal_frame_tilted_plane():
    # oracle: evaluate the six inner-product conditions directly
    t2 = SpacetimeVector(0.0, 1.0, 0.0, 0.5) * (1.0 / math.sqrt(0.75))
    n1, n2 = normal_frame(E1, t2)
    residuals = [inner(n1, n1) - 1.0, inner(n2, n2) + 1.0, inner(n1, n2),
                 inner(n1, E1), inner(n1, t2), inner(n2, E1), inner(n2, t2)]
    assert max(abs(r) for r in residuals) < 1e-12
    assert orientation_det(E1, t2, n1, n2) > 0.0


def test_normal_frame_degenerate_plane():
    # second vector nearly parallel to the first: Gram determinant ~ 0
    t2 = SpacetimeVector(1.0, 1e-13, 0.0, 0.0)
    with pytest.raises(DegenerateTangentPlane):
        normal_frame(E1, t2)
    # timelike t1 is rejected as well
    with pytest.raises(DegenerateTangentPlane):
        normal_frame(E4, E1)


def test_normal_frame_lightlike_tangent_mix():
    # plane spanned by e1 and a boosted spacelike direction close to the
    # light cone still yields a clean frame
    t2 = SpacetimeVector(0.0, 2.0, 0.0, 1.5)
    n1, n2 = normal_frame(E1, t2)
    for t in (E1, t2):
        assert abs(inner(n1, t)) < 1e-12
        assert abs(inner(n2, t)) < 1e-12
    assert abs(inner(n1, n1) - 1.0) < 1e-12
    assert abs(inner(n2, n2) + 1.0) < 1e-12


def test_vector_arithmetic():
    v = SpacetimeVector(1.0, 2.0, 3.0, 4.0)
    w = v * 2.0 - v
    assert w == v
    assert (-v).x4 == -4.0
    assert v.max_norm() == 4.0
    assert SpacetimeVector.from_array(v.as_array()) == v
