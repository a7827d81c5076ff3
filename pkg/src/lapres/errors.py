"""Exception hierarchy shared by every lapres module."""


class LapresError(Exception):
    """Base class for all errors raised by the library."""


class GraphError(LapresError, ValueError):
    """Invalid graph data (loops, asymmetry, disconnected input, bad sink)."""


class PartitionError(LapresError, ValueError):
    """A vertex partition is not a valid connected partition of the graph."""


class SizeBoundError(LapresError):
    """An exponential enumeration was asked to run beyond its vertex bound."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(
            f"{what}: {size} exceeds the enumeration bound of {bound} "
            f"(raise --max-vertices / max_vertices to override)"
        )


class ConfigurationError(LapresError, ValueError):
    """Invalid chip configuration or an illegal firing."""


class IdealError(LapresError, ValueError):
    """Monomial ideal operation applied outside its preconditions."""


class EmptyComplexError(LapresError):
    """Reduced homology was requested for a complex with no vertices."""


class ChainComplexError(LapresError):
    """Consecutive boundary maps do not compose to zero."""

    def __init__(self, degree, row, col, value):
        self.degree = degree
        self.row = row
        self.col = col
        self.value = value
        super().__init__(
            f"boundary composition d{degree - 1}*d{degree} is nonzero at "
            f"({row}, {col}): {value}"
        )


class GeometryError(LapresError):
    """Degenerate geometry for a cell (should be impossible for valid cells)."""


class ParseError(LapresError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
