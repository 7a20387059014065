"""Exception types shared across the package."""


class SweedlerRBError(Exception):
    pass


class FieldMismatch(SweedlerRBError):
    pass


class DivisionByZero(SweedlerRBError):
    pass


class InvalidModulus(SweedlerRBError):
    pass


class DimMismatch(SweedlerRBError):
    pass


class Singular(SweedlerRBError):
    pass


class InvalidParams(SweedlerRBError):
    pass


class InvalidDim(SweedlerRBError):
    pass


class NotASubalgebra(SweedlerRBError):
    pass


class DomainViolation(SweedlerRBError):
    pass


class WeightMismatch(SweedlerRBError):
    pass


class BadReduction(SweedlerRBError):
    pass


class Infeasible(SweedlerRBError):
    pass
