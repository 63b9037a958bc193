"""Exception types shared across the package."""


class HopfgalError(Exception):
    """Base class for all package errors."""


class DivisionByZero(HopfgalError):
    pass


class FieldMismatch(HopfgalError):
    pass


class ZeroPolynomial(HopfgalError):
    pass


class ShapeMismatch(HopfgalError):
    pass


class NotAnExtension(HopfgalError):
    pass


class SplittingCapExceeded(HopfgalError):
    pass


class DimCapExceeded(HopfgalError):
    pass


class NotConvInvertible(HopfgalError):
    pass


class IntegralNotFound(HopfgalError):
    pass


class NotAGroup(HopfgalError):
    pass


class InvariantsNotCentralScalars(HopfgalError):
    pass


class CocycleInvalid(HopfgalError):
    pass


class NotAlgebraMap(HopfgalError):
    pass


class ValuesNotInvariant(HopfgalError):
    pass


class ValueNotInvariant(HopfgalError):
    pass


class NotCocommutative(HopfgalError):
    pass


class PremiseFailed(HopfgalError):
    pass


class NoOneDimRep(HopfgalError):
    pass


class NotAnAlgebraMap(HopfgalError):
    pass


class NotScalar(HopfgalError):
    pass


class BadPrime(HopfgalError):
    pass


class UnknownKind(HopfgalError):
    pass


class TooManyPoints(HopfgalError):
    pass


class RelationCheckFailed(HopfgalError):
    pass
