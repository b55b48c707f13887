"""
Exception hierarchy for swtorsion.

Every library error is a ValueError so callers that only know the builtin
still catch it.
"""

from typing import Optional


class SwTorsionError(ValueError):
    """Base class for all swtorsion errors."""


class ConfigError(SwTorsionError):
    """An environment variable holds a value that cannot be used."""


class ShapeError(SwTorsionError):
    """Matrix dimensions do not fit the operation."""


class VarSetMismatchError(SwTorsionError):
    """Two Laurent polynomials live in different variable sets."""


class NotDivisibleError(SwTorsionError):
    """An exact division has no solution in the ring."""


class NotInvertibleError(SwTorsionError):
    """A substitution target is not a unit but the variable has negative exponents."""


class GeneratorError(SwTorsionError):
    """A word uses a symbol outside the generator set."""


class TwistIndexError(SwTorsionError):
    """A Dehn twist names a handle beyond the genus."""


class KodairaError(SwTorsionError):
    """(K², K·ω) falls in the empty cell of the classification table."""


class IntegralityError(SwTorsionError):
    """A class that must be halved or quartered is not divisible."""


class UndeterminedError(SwTorsionError):
    """A value depends on an intersection number that is not computed."""


class ConsistencyError(SwTorsionError):
    """Assembled invariants contradict each other."""


class ParseError(SwTorsionError):
    """Malformed twist word, word or presentation text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
