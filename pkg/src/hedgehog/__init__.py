"""Exact-arithmetic certifier for hedgehog points built from cubic forms.

The library verifies, over the rationals and degree by degree, the
finite linear-algebra facts that make the truncated apolar ideal of a
suitable cubic in six variables a non-reduced point of the Hilbert
scheme of 13 points: the apolarity shape, the resolution shape, the
graded tangent dimensions, the barycenter traces, the primary
obstruction kernel and its annihilator, and the fractal-family
identities.
"""

from .apolarity import (ApolarCubic, GradedSubspace, HilbertFunction,
                        catalecticant_matrix, ev_preimage,
                        general_enough_condition1, hilbert_function,
                        perp_degree)
from .certificate import Certificate
from .certifier import certify, sample_cubics
from .errors import (AnnihilatorMismatch, BasisFailure, DegenerateInput,
                     DegreeMismatch, ExtensionFailure, FormulaMismatch,
                     FreenessFailure, HedgehogError, IdentityFailure,
                     KernelMismatch, LiftFailure, NoSolutionError,
                     NotHomogeneousCubic, ParseError, PrerequisiteFailed,
                     RankFailure, RoundTripFailure, SyzygyViolation)
from .linalg import Mat, kernel_basis, rank, rref, solve
from .parse import parse_cubic, parse_poly, poly_to_str
from .poly import (ALPHA, BETA, EPS, T, X, Y, DualPoly, Poly, contract,
                   diff, graded_component, monomial_coordinates, substitute,
                   vectorize)
from .resolution import (BettiSlice, IdealPresentation, betti_slice,
                         build_adjusted_presentation, ideal_degree_piece,
                         minimal_generators, minimal_syzygies, syzygy_degree)
from .tangent import (HomPiece, QuotientBasis, TangentVector, barycenter_trace,
                      deformation_roundtrip, derivative_tangent,
                      hom_degree_piece, perp_presentation, quotient_for_ideal,
                      quotient_for_perp, xq_tangent, y_basis)

__version__ = "0.1.0"
