class DimensionMismatchError(ValueError):
    pass


class ModeMismatchError(ValueError):
    pass


class NotInPoincareDomainError(ValueError):
    pass


class ResonantTermError(ValueError):
    pass


class SmallDivisorError(ArithmeticError):
    def __init__(self, message: str, key: tuple or None = None):
        super().__init__(message)
        self.key = key


class NonResonantFieldError(ValueError):
    pass


class NonTriangularFieldError(ValueError):
    pass


class NonDiagonalLinearPartError(ValueError):
    pass


class NonInvertibleLinearPartError(ValueError):
    pass


class TruncationError(ValueError):
    pass


class LaurentBoxError(ValueError):
    pass


class BracketEscapeError(RuntimeError):
    pass


class InvalidFieldSpecError(ValueError):
    def __init__(self, message: str, key: str or None = None):
        super().__init__(message)
        self.key = key


class NumericHazardWarning(UserWarning):
    pass


class NearResonanceWarning(NumericHazardWarning):
    pass


class SmallDivisorWarning(NumericHazardWarning):
    pass


class RankAmbiguityWarning(NumericHazardWarning):
    pass
