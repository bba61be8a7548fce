"""Exception types shared across the package."""


class ComplexityOneError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(ComplexityOneError, ValueError):
    """Operands have incompatible shapes or dimensions."""


class DegenerateInputError(ComplexityOneError, ValueError):
    """Input is degenerate for the requested operation (zero vector, empty index set, ...)."""


class PreconditionError(ComplexityOneError, RuntimeError):
    """A documented precondition of an operation does not hold."""


class StarConditionError(ComplexityOneError, ValueError):
    """Characteristic vectors fail the basis condition at a vertex or face."""


class ColoringError(ComplexityOneError, ValueError):
    """A facet coloring is not proper."""


class ValidationError(ComplexityOneError, RuntimeError):
    """Structured data failed validation required by the operation."""


class ConsistencyError(ComplexityOneError, RuntimeError):
    """Internal invariant violated; signals a bug or incoherent conventions."""


class InputFormatError(ComplexityOneError, ValueError):
    """Malformed external input (JSON schema, CLI arguments)."""


class UnknownEntryError(ComplexityOneError, KeyError):
    """Catalog lookup for a name that does not exist."""
