"""Exception hierarchy shared by every module of the package."""

from typing import Optional, Sequence


class BABError(Exception):
    """Root of all errors raised by the package."""


class GraphFormatError(BABError, ValueError):
    """Raised when a graph file does not follow the edge-list format."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexRangeError(BABError, ValueError):
    """Raised when a vertex index falls outside ``0..n-1``."""


class InvalidGraphError(BABError, ValueError):
    """Raised for self-loops or duplicate edges built programmatically."""


class SizeGuardError(BABError, RuntimeError):
    """Raised when an instance is beyond the desk-scale guard of a stage."""

    def __init__(self, stage: str, size: int, limit: int, what: str = "n"):
        self.stage = stage
        self.size = size
        self.limit = limit
        super().__init__(f"{stage}: {what}={size} exceeds the configured limit {limit}")


class CapExceededError(SizeGuardError):
    """Raised when an enumeration produces more items than its cap."""

    def __init__(self, stage: str, cap: int):
        super().__init__(stage, cap + 1, cap, what="count")


class NotMaximumMatchingError(BABError, ValueError):
    """Raised when a matching admits an augmenting path."""

    def __init__(self, path: Sequence[int]):
        self.path = tuple(path)
        super().__init__(f"matching is not maximum: augmenting path {list(self.path)}")


class HallConditionError(BABError, ValueError):
    """Raised when Hall's condition fails for a required bipartite matching."""


class NotCriticalError(BABError, ValueError):
    """Raised when a set expected to be critical independent is not."""


class StructureError(BABError, ValueError):
    """Raised for invalid BAB structures or failed assembly preconditions."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        self.violations = list(violations)
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


class InfeasibleParametersError(BABError, ValueError):
    """Raised when generator parameters admit no valid instance."""


class RouteDisagreementError(BABError, RuntimeError):
    """Raised when independent computation routes disagree on a result."""
