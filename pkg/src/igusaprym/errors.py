"""Error taxonomy shared by all modules.

Every failure mode that a caller can act on gets its own class; anything
raised from a structural identity that is supposed to be mathematically
forced derives from StructuralAssertionFailed so it is never confused
with bad input.
"""


class IgusaPrymError(Exception):
    """Base class for all package errors."""


class InvalidInput(IgusaPrymError):
    pass


class InvalidSubspace(InvalidInput):
    pass


class NotACone(IgusaPrymError):
    def __init__(self, monomial, msg=""):
        self.monomial = monomial
        super().__init__(msg or "form has a term in the projection variable: %s" % (monomial,))


class NoRationalPointFound(IgusaPrymError):
    """Bounded-height search exhausted.  Explicitly NOT a nonexistence proof."""


class NoRationalPointOnConic(NoRationalPointFound):
    def __init__(self, gram, msg=""):
        self.gram = gram
        super().__init__(msg or "no rational point found on conic within the height bound")


class NotOnHyperplane(InvalidInput):
    pass


class EllipticLocus(IgusaPrymError):
    pass


class OnSingularLine(IgusaPrymError):
    pass


class StructuralAssertionFailed(IgusaPrymError):
    """A mathematically forced identity failed; aborts with diagnostics."""


class WorseSingularity(IgusaPrymError):
    """Singular point is not an ordinary node (vanishing tangent cone part)."""


class NotSquareFree(InvalidInput):
    pass


class NotNormalized(InvalidInput):
    pass


class SingularPoint(InvalidInput):
    pass


class DegeneratePair(InvalidInput):
    pass


class TwistNotRepresented(IgusaPrymError):
    """The requested square class admits no solution of the norm ansatz."""


class InvalidBranch(InvalidInput):
    pass


class BranchCollision(IgusaPrymError):
    pass


class DegenerateParameters(InvalidInput):
    def __init__(self, factor, msg=""):
        self.factor = factor
        super().__init__(msg or "degenerate parameters: vanishing factor %s" % (factor,))


class NotPalindromic(InvalidInput):
    pass


class DegenerateQuotient(IgusaPrymError):
    pass


class SamplingFailed(IgusaPrymError):
    def __init__(self, planes_tried, msg=""):
        self.planes_tried = planes_tried
        super().__init__(msg or "no points found after %d planes" % planes_tried)


class IndeterminacyPoint(InvalidInput):
    pass


class DegenerateLine(IgusaPrymError):
    pass


class NotGeneralPosition(IgusaPrymError):
    pass


class NonReducedDual(IgusaPrymError):
    pass


class DegenerateBranch(IgusaPrymError):
    pass
