"""Exception hierarchy."""


class QBCapError(Exception):
    pass


class InvalidState(QBCapError, ValueError):
    """A matrix violates one of the density-matrix invariants.

    ``invariant`` names the violated property.
    """

    def __init__(self, message, invariant="state"):
        super().__init__(message)
        self.invariant = invariant


class NotHermitian(InvalidState):
    def __init__(self, message):
        super().__init__(message, "hermitian")


class NoConvergence(QBCapError, RuntimeError):
    pass


class BadSubsystem(QBCapError, ValueError):
    pass


class NotUnitary(QBCapError, ValueError):
    pass


class LengthMismatch(QBCapError, ValueError):
    pass


class DimensionMismatch(QBCapError, ValueError):
    pass


class BadSpec(QBCapError, ValueError):
    pass


class UnsupportedGate(QBCapError, ValueError):
    pass


class IndexOutOfRange(QBCapError, IndexError):
    pass


class NonPositiveCoupling(QBCapError, ValueError):
    pass
