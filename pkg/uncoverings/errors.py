"""Exception hierarchy shared by every module of the package."""


class UncoveringError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(UncoveringError, ValueError):
    """Invalid graph parameters, foreign edge ids, or a disconnected input."""


class NotASpanningTree(GraphError):
    pass


class DecompositionError(UncoveringError):
    """A decomposition or factorisation fails its partition/shape checks."""


class ConstructionError(UncoveringError):
    """The requested construction is unsupported for these parameters."""


class PreconditionViolation(UncoveringError):
    """A documented precondition does not hold (e.g. t >= edge connectivity)."""


class ResourceLimitExceeded(UncoveringError):
    """A configured ceiling or cap would be exceeded."""

    def __init__(self, what, limit, demand=None):
        self.what = what
        self.limit = limit
        self.demand = demand
        msg = f'{what}: limit {limit}'
        if demand is not None:
            msg += f', needed {demand}'
        super().__init__(msg)


class FormatError(UncoveringError):
    """Malformed graph6 or JSON input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
