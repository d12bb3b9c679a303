"""Exception hierarchy shared by the graph core, services and CLI."""


class MSTMEError(Exception):
    """Base class for all errors raised by this package."""

    pass


class PointSetError(MSTMEError):
    """Invalid point set input."""

    pass


class PointSetParseError(PointSetError):
    """A point file line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class DuplicatePointError(PointSetError):
    """Two points share exactly the same coordinates."""

    pass


class InsufficientPointsError(PointSetError):
    """Fewer points than the operation requires."""

    pass


class InvalidParameterError(MSTMEError, ValueError):
    """A numeric or enum parameter is out of its allowed range."""

    pass


class DegenerateGeometryError(MSTMEError):
    """Input geometry the triangulation cannot handle (e.g. all points collinear)."""

    pass


class ContractError(MSTMEError):
    """A forest operation was called in violation of its precondition."""

    pass


class InternalInvariantError(MSTMEError):
    """An internal consistency check failed."""

    pass


class StabilityError(MSTMEError):
    """Edge stability cannot be computed for the given graphs."""

    pass
