from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .graph import ValidationReport


class DistOracleError(Exception):
    """Root of every error raised by distoracle."""


class UnwrapError(DistOracleError):
    def __init__(self, value) -> None:
        super().__init__(value)
        self.value = value


class GraphFormatError(DistOracleError):
    """A graph file does not parse under its declared format.

    Attributes:
        path (str): File being read.
        line (int): 1-based line number of the offending line, 0 when not line-specific.
    """

    def __init__(self, message: str, path: str = "<memory>", line: int = 0) -> None:
        where = f"{path}:{line}" if line else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class NegativeWeightError(GraphFormatError):
    pass


class GraphSizeError(DistOracleError):
    """Vertex count or total weight exceeds what the distance accumulator can hold."""


class GraphValidationError(DistOracleError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(f"graph failed validation: {report.summary()}")
        self.report = report


class ParameterError(DistOracleError):
    pass


class QueryError(DistOracleError):
    pass


class SerializationError(DistOracleError):
    pass


class ScenarioError(DistOracleError):
    pass


class SizeGuardError(DistOracleError):
    pass
