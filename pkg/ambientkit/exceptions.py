class AmbientKitError(Exception):
    """Base class for every error raised by ambientkit."""


class NotInIndexSet(AmbientKitError, LookupError):
    pass


class DegreeMismatch(AmbientKitError, ValueError):
    pass


class SlotOutOfRange(AmbientKitError, IndexError):
    pass


class ShapeMismatch(AmbientKitError, ValueError):
    pass


class InvalidSpec(AmbientKitError, ValueError):
    pass


class InvalidInput(AmbientKitError, ValueError):
    """Inputs that do not fit the operator, e.g. a model of the wrong dimension."""


class VariantUnavailable(AmbientKitError, ValueError):
    pass


class LevelUnavailable(AmbientKitError, ValueError):
    pass


class DegenerateWeight(AmbientKitError, ValueError):
    """
    A shift coefficient vanishes, so the requested right inverse does not
    exist. `alpha` is the first composition (in index-set order) whose
    coefficient is zero.
    """

    def __init__(self, message, alpha=None):
        super().__init__(message)
        self.alpha = alpha


class IndexMismatch(AmbientKitError, ValueError):
    pass


class PreconditionViolated(AmbientKitError, ValueError):
    pass


class ZeroDenominator(AmbientKitError, ZeroDivisionError):
    pass


class NonHomogeneousInput(AmbientKitError, ValueError):
    pass


class InvariantModeUnsupported(AmbientKitError, ValueError):
    pass


class NotGeneric(UserWarning):
    """Weights lie outside the generic set (some 2w_i is an integer)."""


class HypothesisViolation(UserWarning):
    """Even n with n < 2k was explicitly allowed."""
