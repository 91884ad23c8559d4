"""Exception types shared across the package."""


class SplinedimError(Exception):
    """Base class for all package errors."""


class InvalidGraph(SplinedimError):
    pass


class NonSquare(SplinedimError):
    pass


class UnboundVariable(SplinedimError):
    pass


class ZeroDivisor(SplinedimError):
    pass


class NonHomogeneousLabel(SplinedimError):
    pass


class MissingLabel(SplinedimError):
    pass


class SizeGuard(SplinedimError):
    pass


class NotGeneric(SplinedimError):
    pass


class Disconnected(SplinedimError):
    pass


class NoneExists(SplinedimError):
    pass


class NotFound(SplinedimError):
    pass


class NotContractible(SplinedimError):
    pass


class SharedEdgeViolation(SplinedimError):
    pass


class SpecialPosition(SplinedimError):
    """Labels lie in special position for one contraction stage.

    `stage` is the stage index, or the string "residual".
    """

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class HypothesisViolation(SplinedimError):
    pass


class HorizontalEdge(SplinedimError):
    pass


class Degenerate(SplinedimError):
    pass


class BadRotation(SplinedimError):
    pass
