"""Linear algebra of R^4 with the indefinite inner product of signature (3,1).

Conventions:

    <u, v> = u1*v1 + u2*v2 + u3*v3 - u4*v4

in the fixed orthonormal frame O e1 e2 e3 e4, so e1^2 = e2^2 = e3^2 = 1 and
e4^2 = -1.  The ordered basis (e1, e2, e3, e4) defines the positive
orientation: a quadruple of vectors is positively oriented exactly when the
determinant of its coordinate matrix is positive.

Causal vocabulary: a vector is spacelike when <v,v> > 0, timelike when
<v,v> < 0 and lightlike when <v,v> = 0 but v is not the zero vector.
Degeneracy decisions use an absolute tolerance (default 1e-10); all callers
in this package work with O(1)-scaled data.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTangentPlane, LightlikeNormalDirection

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, slots=True)
class SpacetimeVector:
    """Point/vector of R^4_1 in the fixed frame; immutable and hashable."""

    x1: float
    x2: float
    x3: float
    x4: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.x4])

    @staticmethod
    def from_array(a) -> "SpacetimeVector":
        return SpacetimeVector(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def __add__(self, other: "SpacetimeVector") -> "SpacetimeVector":
        return SpacetimeVector(self.x1 + other.x1, self.x2 + other.x2,
                               self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "SpacetimeVector") -> "SpacetimeVector":
        return SpacetimeVector(self.x1 - other.x1, self.x2 - other.x2,
                               self.x3 - other.x3, self.x4 - other.x4)

    def __mul__(self, s: float) -> "SpacetimeVector":
        return SpacetimeVector(self.x1 * s, self.x2 * s, self.x3 * s, self.x4 * s)

    __rmul__ = __mul__

    def __neg__(self) -> "SpacetimeVector":
        return SpacetimeVector(-self.x1, -self.x2, -self.x3, -self.x4)

    def max_norm(self) -> float:
        return max(abs(self.x1), abs(self.x2), abs(self.x3), abs(self.x4))


E1 = SpacetimeVector(1.0, 0.0, 0.0, 0.0)
E2 = SpacetimeVector(0.0, 1.0, 0.0, 0.0)
E3 = SpacetimeVector(0.0, 0.0, 1.0, 0.0)
E4 = SpacetimeVector(0.0, 0.0, 0.0, 1.0)
ZERO = SpacetimeVector(0.0, 0.0, 0.0, 0.0)


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


def inner(u: SpacetimeVector, v: SpacetimeVector) -> float:
    """Indefinite inner product diag(+1,+1,+1,-1); symmetric, bilinear."""
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3 - u.x4 * v.x4


def causal_class(v: SpacetimeVector, tol: float = DEFAULT_TOL) -> CausalClass:
    q = inner(v, v)
    if q > tol:
        return CausalClass.SPACELIKE
    if q < -tol:
        return CausalClass.TIMELIKE
    # max-norm separates lightlike from (numerically) zero near the origin
    if v.max_norm() > tol:
        return CausalClass.LIGHTLIKE
    return CausalClass.ZERO


def orientation_det(a: SpacetimeVector, b: SpacetimeVector,
                    c: SpacetimeVector, d: SpacetimeVector) -> float:
    """Determinant of the matrix with columns a, b, c, d in the fixed frame.

    Positive exactly when (a, b, c, d) is positively oriented.  Columns are
    put into a canonical order internally (tracking permutation parity), so
    swapping any two arguments negates the result bit-exactly and repeated
    arguments give an exact 0.0.
    """
    cols = [(a.x1, a.x2, a.x3, a.x4), (b.x1, b.x2, b.x3, b.x4),
            (c.x1, c.x2, c.x3, c.x4), (d.x1, d.x2, d.x3, d.x4)]
    sign = 1.0
    for i in range(3):  # selection sort, counting transpositions
        m = min(range(i, 4), key=lambda j: cols[j])
        if m != i:
            cols[i], cols[m] = cols[m], cols[i]
            sign = -sign
    for i in range(3):
        if cols[i] == cols[i + 1]:
            return 0.0
    return sign * float(np.linalg.det(np.array(cols).T))


def _project_out(w: SpacetimeVector, t1: SpacetimeVector, t2: SpacetimeVector,
                 gram_inv: np.ndarray) -> SpacetimeVector:
    """<,>-orthogonal residual of w against span{t1, t2}."""
    rhs = np.array([inner(w, t1), inner(w, t2)])
    ab = gram_inv @ rhs
    return w - float(ab[0]) * t1 - float(ab[1]) * t2


# Candidate projection order: e3, e4 first because rotational surfaces keep
# their tangents near the e1e2/e3e4 coordinate split; the choice makes the
# constructed frame deterministic.
_CANDIDATES = (E3, E4, E2, E1)


def normal_frame(t1: SpacetimeVector, t2: SpacetimeVector,
                 tol: float = DEFAULT_TOL) -> tuple[SpacetimeVector, SpacetimeVector]:
    """Pseudo-orthonormal normal frame (n1, n2) of the plane span{t1, t2}.

    Requires t1, t2 to span a spacelike 2-plane.  Returns n1 spacelike
    (<n1,n1> = 1) and n2 timelike (<n2,n2> = -1), both orthogonal to t1, t2
    and to each other, with (t1, t2, n1, n2) positively oriented.

    Construction: project the basis vectors e3, e4, e2, e1 onto the
    <,>-orthogonal complement of the tangent plane, skipping residuals whose
    squared norm is within tol of zero, pseudo-normalize the first residual
    of each causal sign, and flip n2 if the orientation determinant comes out
    negative.
    """
    g11, g12, g22 = inner(t1, t1), inner(t1, t2), inner(t2, t2)
    gram_det = g11 * g22 - g12 * g12
    if g11 <= tol or gram_det <= tol:
        raise DegenerateTangentPlane(
            f"tangent vectors do not span a spacelike plane "
            f"(E={g11:.3e}, EG-F^2={gram_det:.3e})")
    gram_inv = np.array([[g22, -g12], [-g12, g11]]) / gram_det

    # first normal: first candidate whose residual has definite sign
    first = None
    rest = []
    for e in _CANDIDATES:
        r = _project_out(e, t1, t2, gram_inv)
        q = inner(r, r)
        if first is None:
            if abs(q) > tol:
                first = r * (1.0 / np.sqrt(abs(q)))
        else:
            rest.append(r)
    if first is None:
        raise LightlikeNormalDirection(
            "no projected candidate has |<r,r>| above tolerance")
    eps1 = 1.0 if inner(first, first) > 0 else -1.0
    # second normal: orthogonalize the remaining residuals against the first;
    # in the signature-(1,1) normal plane the complement of a definite vector
    # carries the opposite sign automatically
    second = None
    for r in rest:
        w = r - (inner(r, first) / eps1) * first
        q = inner(w, w)
        if abs(q) > tol and q * eps1 < 0.0:
            second = w * (1.0 / np.sqrt(abs(q)))
            break
    if second is None:
        raise LightlikeNormalDirection(
            "could not extract a spacelike/timelike pair from the normal plane")
    n1, n2 = (first, second) if eps1 > 0 else (second, first)
    if orientation_det(t1, t2, n1, n2) < 0:
        n2 = -n2
    return n1, n2
