"""Exception hierarchy shared by all modules."""


class ToricMirrorError(ValueError):
    """Base class for every error raised by this package."""


# exact linear algebra / datum validation
class RankDeficient(ToricMirrorError):
    pass


class NotUnimodular(ToricMirrorError):
    pass


class NotTotallyUnimodular(ToricMirrorError):
    def __init__(self, msg, subset=None):
        super().__init__(msg)
        self.subset = subset


class DimensionMismatch(ToricMirrorError):
    pass


# toric combinatorics
class OnWall(ToricMirrorError):
    pass


class NonGeneric(ToricMirrorError):
    pass


class Unsupported(ToricMirrorError):
    pass


# q-series
class DivisionByZero(ToricMirrorError, ZeroDivisionError):
    pass


class PoleAtTruncation(ToricMirrorError):
    pass


class NonPositiveGrading(ToricMirrorError):
    pass


class SpecMismatch(ToricMirrorError):
    pass


class OutOfTruncationRange(ToricMirrorError):
    pass


class NonIntegralShift(ToricMirrorError):
    """A prefactor shift would need a fractional power of q or of a variable."""


# I-functions / difference equations
class NonGenericSpecialization(ToricMirrorError):
    pass


class TruncationUnderflow(ToricMirrorError):
    pass


class HypothesisViolated(ToricMirrorError):
    pass


class TruncationMismatch(ToricMirrorError):
    pass
