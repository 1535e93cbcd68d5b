"""minksurf: invariants of spacelike surfaces in the 4-dimensional Minkowski
space and the general rotational surface families built from them.

Layers:

  minkowski    signature-(3,1) linear algebra, causal types, normal frames
  kernel       numeric fundamental forms and pointwise invariants of any
               surface patch z(u, v)
  rotational   closed-form embeddings and invariants of the double-rotation
               families swept from a plane profile curve
  meridians    profile generators: closed-form minimal and parabolic
               meridians, ODE-integrated flat / flat-normal meridians
  verify       seeded property-check suite (also behind `minksurf verify`)
  cli          command-line interface
"""

from .errors import (DegenerateTangentPlane, DomainViolation, EmptyDomain,
                     GeometryError, LightlikeMeanCurvature,
                     LightlikeNormalDirection, MinimalPoint, NotMinimal,
                     NotPrincipalParameters, NotSpacelike, ResolutionError,
                     SingularConfiguration)
from .kernel import (DerivativeMode, FirstForm, FrameInvariants,
                     InvariantReport, PointClass, SecondForm, SurfacePatch,
                     allied_mean_curvature_magnitude, first_form,
                     frame_invariants, full_report, invariants, second_form)
from .minkowski import (CausalClass, SpacetimeVector, causal_class, inner,
                        normal_frame, orientation_det)
from .meridians import (OdeProblem, OdeTarget, ParabolicCase, SolvedMeridian,
                        TerminationReason, conservation_check,
                        load_meridian_csv, minimal_meridian,
                        normalized_speed_residual, parabolic_meridian,
                        save_meridian_csv, solve_ode)
from .rotational import (MeridianCurve, Provenance, RotationalSurface,
                         SurfaceKind, as_patch, circle_meridian,
                         circle_profile_surface, closed_invariants_frame8,
                         closed_invariants_kKkappa, embed, embed_partials,
                         first_form_coefficients, hyperbolic_meridian,
                         hyperbolic_profile_surface, line_meridian,
                         power_law_meridian, residual_flat,
                         residual_flat_normal, residual_minimal,
                         sampled_meridian)

__version__ = "0.1.0"
