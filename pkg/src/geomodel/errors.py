"""Exception hierarchy shared by all modules."""


class GeomodelError(Exception):
    """Base class for all errors raised by geomodel."""

    exit_code = 5


class InputError(GeomodelError):
    """Malformed or invalid user input (CLI exit status 2)."""

    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, column=None, line=None, where=None):
        self.column = column
        self.line = line
        self.where = where
        loc = []
        if where:
            loc.append(where)
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)


class UnknownSymbolError(InputError):
    pass


class ReducibleMinimalPolynomial(InputError):
    def __init__(self, symbol, witness):
        self.symbol = symbol
        self.witness = witness
        super().__init__(f"minimal polynomial of {symbol} is reducible; factor {witness}")


class CandidateError(InputError):
    """Nice-basis candidate outside L or inside K."""


class NotReducedError(InputError):
    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"cover is not reduced: charts {first!r} and {second!r} coincide")


class ZeroDivision(GeomodelError, ZeroDivisionError):
    exit_code = 2


class BudgetExceeded(GeomodelError):
    """A configured pair/step/degree limit was hit (CLI exit status 4)."""

    exit_code = 4

    def __init__(self, what, limit):
        self.what = what
        self.limit = limit
        super().__init__(f"{what} exceeded configured limit {limit}")


class DegreeBoundExceeded(BudgetExceeded):
    pass


class Inconclusive(GeomodelError):
    """A bounded search ended without a certificate either way (exit status 4)."""

    exit_code = 4

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotGalois(GeomodelError):
    """L/K failed fixed-field certification (exit status 3)."""

    exit_code = 3

    def __init__(self, fixed_dimension, degree):
        self.fixed_dimension = fixed_dimension
        self.degree = degree
        super().__init__(
            f"L is not Galois over K: fixed subspace has dimension {fixed_dimension} (degree {degree})")


class InternalInvariantError(GeomodelError):
    """A post-condition that should always hold was refuted (CLI exit status 5)."""
