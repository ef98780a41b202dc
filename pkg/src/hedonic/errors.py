"""Exception types shared across the package."""


class HedonicError(Exception):
    """Base class for all errors raised by this package."""


class GameError(HedonicError, ValueError):
    """Malformed or inconsistent game data."""


class UnknownCoalition(GameError, KeyError):
    """A coalition value was requested but is not defined under the active policy."""

    def __str__(self):
        return Exception.__str__(self)


class PlayerNotInCoalition(GameError):
    pass


class MissingTableEntry(GameError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class LimitExceeded(HedonicError):
    """Problem size is above the hard cap of an exhaustive operation."""


class NumericalFailure(HedonicError, ArithmeticError):
    """A solver failed for numerical reasons (iteration cap, residual check)."""


class NumericalSingularity(NumericalFailure):
    pass
