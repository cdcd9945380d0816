"""Exception hierarchy shared by every module of the package."""


class DynMsfError(Exception):
    """Base class for all package errors."""


class GraphError(DynMsfError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class EdgeAlreadyPresent(DuplicateEdge):
    pass


class EdgeNotFound(GraphError, KeyError):
    pass


class WeightOutOfRange(GraphError):
    pass


class SelfLoopForbidden(GraphError):
    pass


class EmptySupport(DynMsfError, LookupError):
    """Raised when sampling from a structure with no non-zero entries."""


class TParamTooSmall(DynMsfError, ValueError):
    pass


class TParamViolation(DynMsfError, ValueError):
    """The caller broke the T-parameter contract (T >= nis, |dT| <= 2)."""


class ParseError(DynMsfError, ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ReplayError(DynMsfError):
    def __init__(self, timestamp, message):
        super().__init__(f"update {timestamp}: {message}")
        self.timestamp = timestamp
