"""Exception hierarchy.

Every error carries a stable ``name`` used by the CLI diagnostics.  Input
errors (malformed or invalid documents) exit with status 1, domain errors
(well-formed input outside an operation's preconditions) with status 2.
"""


class SemitoricError(Exception):
    exit_status = 2

    @property
    def name(self):
        return type(self).__name__.rstrip("_")


class InputError(SemitoricError):
    exit_status = 1


class DomainError(SemitoricError):
    exit_status = 2


# fan validation
class NonPrimitiveRay(InputError):
    pass


class NonUnimodularCone(InputError):
    def __init__(self, cone, determinant):
        super().__init__(f"cone {list(cone)} has determinant {determinant}")
        self.cone = tuple(cone)
        self.determinant = determinant


class ConeOverlap(InputError):
    pass


class DimensionMismatch(InputError):
    pass


# polyhedral domain errors
class CompleteFan(DomainError):
    pass


class UnboundedSearch(DomainError):
    pass


class NotContracting(DomainError):
    pass


class NotComplete(DomainError):
    pass


class NoVertices(DomainError):
    pass


class UnboundedBelow(DomainError):
    pass


class RhsMeetsLhs(DomainError):
    pass


class NonIntegralCoordinates(DomainError):
    pass


class NonIsolatedFixedLocus(DomainError):
    def __init__(self, cone):
        super().__init__(f"fixed component for cone {list(cone)} is not a point")
        self.cone = tuple(cone)


# algebra
class InfiniteQuotient(DomainError):
    pass


class NonPositiveOmega(DomainError):
    def __init__(self, primitive, omega):
        super().__init__(f"omega = {omega} <= 0 for primitive subset {list(primitive)}")
        self.primitive = tuple(primitive)
        self.omega = omega


class NotFanoOrCY(DomainError):
    pass


class GradingInhomogeneous(DomainError):
    pass


class CompactFan(DomainError):
    pass


class RouteMismatch(DomainError):
    pass


# documents and command line
class SyntaxError_(InputError):
    """Unparseable document text (``SyntaxError`` in diagnostics)."""


class SchemaError(InputError):
    pass


class ValidationError(InputError):
    def __init__(self, message, cause=None):
        super().__init__(message)
        self.cause = cause


class UnknownCommand(InputError):
    pass


class UnknownExample(InputError):
    pass


class BadParams(InputError):
    pass
