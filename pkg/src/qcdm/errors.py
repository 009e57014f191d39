"""Exception hierarchy. Every error is a ``ValueError`` so callers that only
care about bad input can catch that."""


class QcdmError(ValueError):
    pass


class DimensionError(QcdmError):
    pass


class ShapeError(QcdmError):
    pass


class HermiticityError(QcdmError):
    pass


class ConvergenceError(QcdmError, ArithmeticError):
    pass


class AxiomViolation(QcdmError):
    pass


class ZeroProbability(QcdmError):
    """The conditioning projector has (numerically) zero weight in the state."""


class NormalizationError(QcdmError):
    pass


class BasisError(QcdmError):
    pass


class OrthogonalityError(QcdmError):
    pass


class LengthError(QcdmError):
    pass
