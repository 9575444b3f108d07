"""Exception hierarchy shared by all modules."""


class GtspError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(GtspError):
    """Malformed instance, tour or metadata text (CLI exit code 2)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphError(GtspError):
    pass


class Disconnected(GraphError):
    pass


class IsolatedVertex(GraphError):
    pass


class NonEdge(GraphError):
    pass


class TourError(GtspError):
    pass


class NotClosed(TourError):
    pass


class NonEdgeStep(TourError):
    pass


class MissingVertex(TourError):
    pass


class NotACover(GtspError):
    def __init__(self, edge: tuple[int, int]):
        self.edge = edge
        super().__init__(f"edge {{{edge[0]},{edge[1]}}} is not covered")


class TooLarge(GtspError):
    pass


class IsolatedNonCoverVertex(GtspError):
    pass


class InvalidKernelTour(GtspError):
    pass


class AnchorNotOnTour(GtspError):
    pass


class NotDecisionMode(GtspError):
    pass


class InvalidSpec(GtspError):
    pass
