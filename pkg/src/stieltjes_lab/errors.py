"""Exception types shared across the package."""


class StieltjesError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(StieltjesError, ValueError):
    """An argument lies outside the documented domain."""


class DomainError(StieltjesError, ValueError):
    """A special function was evaluated outside its supported domain."""


class AccuracyError(StieltjesError, ArithmeticError):
    """An iterative computation did not reach its tolerance.

    The best available estimate is kept on ``best`` so callers can decide
    whether to use it anyway.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class PoleError(StieltjesError, ZeroDivisionError):
    """A convergent denominator vanished at the evaluation point."""

    def __init__(self, message, n):
        super().__init__(message)
        self.n = n


class ConsistencyError(StieltjesError, ArithmeticError):
    """Two independent evaluation routes disagreed beyond tolerance."""


class ConfigError(StieltjesError, ValueError):
    """Invalid experiment configuration.

    ``field`` names the offending key and ``line`` its 1-based line number
    when the configuration came from text.
    """

    def __init__(self, message, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line
