"""Exception types raised by the geometry kernel and the meridian generators."""


class GeometryError(ValueError):
    """Base class for all geometric failure modes in this package."""


class DegenerateTangentPlane(GeometryError):
    """The two tangent vectors do not span a spacelike 2-plane."""


class LightlikeNormalDirection(GeometryError):
    """No projected frame candidate has a normal component of definite sign."""


class NotSpacelike(GeometryError):
    """Induced metric fails E > 0 or EG - F^2 > 0 at the evaluation point."""


class NotPrincipalParameters(GeometryError):
    """Frame invariants requested away from F = 0, M = 0 parameters."""


class MinimalPoint(GeometryError):
    """Mean curvature vector vanishes; the frame direction b is undefined."""


class LightlikeMeanCurvature(GeometryError):
    """<H,H> is too close to zero to normalize or classify."""


class DomainViolation(GeometryError):
    """Evaluation point violates the admissible domain of a surface/meridian."""


class SingularConfiguration(GeometryError):
    """A denominator of a characterizing equation vanishes at the point."""


class EmptyDomain(GeometryError):
    """No parameter interval satisfies the requested constraints."""


class NotMinimal(GeometryError):
    """Conservation check requested on a surface that is not minimal."""


class ResolutionError(GeometryError):
    """Sampled meridian grid is too coarse for invariant evaluation."""
