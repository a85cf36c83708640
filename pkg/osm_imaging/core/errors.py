"""Exception hierarchy shared by every stage of the pipeline.

Each error also derives from the builtin a caller would naturally catch
(``ValueError`` for bad input, ``RuntimeError`` for numerical failure), so
code written against plain builtins keeps working.
"""

from __future__ import annotations

from typing import Optional, Sequence


class OSMError(Exception):
    """Base class for all errors raised by osm_imaging."""


class DomainError(OSMError, ValueError):
    """A special function was called outside its domain."""


class SingularityError(DomainError):
    """A Green's kernel was evaluated at coincident points."""


class ProximityError(OSMError, ValueError):
    """An exterior evaluator was asked for a point too close to the support."""


class ConfigError(OSMError, ValueError):
    """Invalid configuration or violated geometric precondition.

    Attributes:
        fields: Names of the offending configuration fields (may be empty).
    """

    def __init__(self, message: str, fields: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.fields = list(fields or [])


class SolverError(OSMError, RuntimeError):
    """The Krylov solve did not reach its tolerance.

    Attributes:
        residual: Relative residual at termination.
        iterations: Number of inner iterations performed.
    """

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual={residual:.3e}, iterations={iterations})")
        self.residual = residual
        self.iterations = iterations


class MissingDataError(OSMError, ValueError):
    """A functional needs normal-derivative data the dataset does not carry."""


class DegenerateError(OSMError, ValueError):
    """An operation is undefined on all-zero data."""


class SchemaError(OSMError, ValueError):
    """A dataset or image file does not match its declared layout.

    Attributes:
        field: Name of the header field or column that failed.
        line: 1-based line number for text formats, None for binary.
    """

    def __init__(self, message: str, field: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{field}: {message}{where}")
        self.field = field
        self.line = line
