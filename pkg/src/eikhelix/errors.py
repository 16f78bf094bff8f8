"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`EikHelixError`.  Geometric precondition failures derive from
:class:`GeometryError` so the command line can map them to one exit code.
"""


class EikHelixError(Exception):
    pass


# numerics

class DomainError(EikHelixError, ValueError):
    """An expression was evaluated outside its domain."""


class OrderError(EikHelixError, ValueError):
    """Requested derivative order exceeds the supported maximum."""


class InsufficientSamples(EikHelixError, ValueError):
    pass


class NonConvergence(EikHelixError, RuntimeError):
    pass


# expressions and configuration

class ConfigError(EikHelixError, ValueError):
    pass


class BadExpression(ConfigError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class UnknownKey(ConfigError):
    pass


# geometry

class GeometryError(EikHelixError, ValueError):
    pass


class NotUnitSpeed(GeometryError):
    pass


class DegenerateNormal(GeometryError):
    pass


class NotNull(GeometryError):
    pass


class DegenerateAcceleration(GeometryError):
    pass


class LightlikeDarboux(GeometryError):
    pass


class NullCurveError(GeometryError):
    pass


class MixedCausality(GeometryError):
    pass


class PreconditionError(GeometryError):
    pass
