"""Exception hierarchy. Three branches map to CLI exit codes:
input/validation problems (2), dimension mismatches (3), numeric failures (4)."""


class PovmcohError(Exception):
    """Base class for all library errors."""


class ValidationError(PovmcohError):
    """Invalid input: bad shapes, broken object invariants, out-of-range parameters."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else []


class NotSquareError(ValidationError):
    pass


class NotHermitianError(ValidationError):
    pass


class NotUnitaryError(ValidationError):
    pass


class AlphaOutOfRangeError(ValidationError):
    pass


class InvalidExponentsError(ValidationError):
    pass


class ZOutOfRangeError(ValidationError):
    pass


class XOutOfRangeError(ValidationError):
    pass


class EmptyEnsembleError(ValidationError):
    pass


class BetaNonPositiveError(ValidationError):
    pass


class DerivativeUnavailableError(ValidationError):
    """A repeated divided-difference node needs a derivative that diverges there."""


class DimensionMismatchError(PovmcohError):
    """Operands live on different Hilbert-space dimensions."""


class NumericError(PovmcohError):
    """A numeric kernel produced something outside its contract."""


class ConvergenceFailureError(NumericError):
    pass


class NegativeEigenvalueError(NumericError):
    """An operator that must be positive semidefinite has a genuinely negative eigenvalue."""


class DomainError(NumericError):
    """A scalar function was evaluated outside its domain (e.g. log at 0 with no limit)."""


class SingularSumError(NumericError):
    """Random POVM construction drew a numerically singular normalization sum."""


class DegenerateEnsembleError(NumericError):
    """Ensemble average state is numerically zero; no measurement can be built."""
