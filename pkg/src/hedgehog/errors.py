"""Exception types shared across the library.

Every verification routine raises a specific exception when the fact it
certifies fails to hold; the certifier CLI catches these and turns them
into FAILED verdicts instead of tracebacks.
"""


class HedgehogError(Exception):
    """Base class for all library errors."""


class NoSolutionError(HedgehogError):
    """A linear system has no solution (right-hand side outside the column space)."""


class ParseError(HedgehogError):
    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = expected
        self.found = found
        what = f"expected {expected}" + (f", found {found!r}" if found is not None else "")
        super().__init__(f"parse error at position {position}: {what}")


class NotHomogeneousCubic(HedgehogError):
    """Input polynomial is not a nonzero homogeneous cubic in x1..x6."""


class DegenerateInput(HedgehogError):
    """Zero form: the apolar algebra is the zero ring."""


class PrerequisiteFailed(HedgehogError):
    """An operation was invoked before its gating conditions were verified."""


class SyzygyViolation(HedgehogError):
    """A candidate homomorphism fails a syzygy constraint."""


class RoundTripFailure(HedgehogError):
    """Dual-number deformation of a tangent vector failed to verify."""


class BasisFailure(HedgehogError):
    """The 13 candidate elements fail to give a free basis over the dual numbers."""


class LiftFailure(HedgehogError):
    """Chain-level lift construction failed (falsifies degree-2 generation)."""


class FormulaMismatch(HedgehogError):
    """Chain-level and closed-form obstruction representatives disagree."""


class ExtensionFailure(HedgehogError):
    """The two-parameter extension of a derivative/tangent pair does not exist."""


class KernelMismatch(HedgehogError):
    """The two computation routes for the obstruction kernel disagree."""


class AnnihilatorMismatch(HedgehogError):
    """Annihilator of the obstruction kernel differs from the degree-2 perp."""


class IdentityFailure(HedgehogError):
    """An exact symbolic identity failed."""


class DegreeMismatch(HedgehogError):
    """Subspace equality failed in a specific degree."""


class FreenessFailure(HedgehogError):
    """Relative freeness check failed at a sample point or degree."""


class RankFailure(HedgehogError):
    """A family fiber has wrong dimension or the spanning set fails."""
