"""Exception hierarchy.

Every error the library raises on bad input derives from ``CrystalError``.
``TheoremViolation`` is different in kind: it means a checked statement failed
on inputs that satisfy its hypotheses, which should never happen.
"""


class CrystalError(ValueError):
    pass


class NotGCM(CrystalError):
    pass


class NotSymmetrizable(CrystalError):
    pass


class IndexOutOfRange(CrystalError):
    pass


class NotFiniteType(CrystalError):
    pass


class NotDominant(CrystalError):
    pass


class NotRegular(CrystalError):
    pass


class NotSimplyLaced(CrystalError):
    pass


class NotReducedWord(CrystalError):
    pass


class BudgetExceeded(CrystalError):
    pass


class NonIntegralMinimum(CrystalError):
    pass


class DuplicateIndices(CrystalError):
    pass


class PositionOutOfRange(CrystalError):
    pass


class NotARoot(CrystalError):
    pass


class NotDistinctSimpleSum(CrystalError):
    pass


class MinBoundViolated(CrystalError):
    pass


class SumMismatch(CrystalError):
    pass


class HypothesisViolated(CrystalError):
    pass


class BadSupport(CrystalError):
    pass


class NotDeep(CrystalError):
    pass


class LengthConditionFailed(CrystalError):
    pass


class NotDominantDifference(CrystalError):
    pass


class UnsupportedChildType(CrystalError):
    pass


class SelfValidationFailed(CrystalError):
    pass


class InvariantBroken(CrystalError):
    pass


class TheoremViolation(AssertionError):
    """A statement failed on inputs satisfying its hypotheses."""
