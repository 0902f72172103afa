"""Exception types shared across the package."""


class LandgenError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(LandgenError, ValueError):
    """Raised when an operation receives structurally invalid input."""


class EvaluationOverflowError(LandgenError, ArithmeticError):
    """Raised when a component evaluation produces a non-finite value.

    Carries the offending component id when known so harnesses can locate
    misconfigured instances.
    """

    def __init__(self, message, component_id=None, block_id=None):
        super().__init__(message)
        self.component_id = component_id
        self.block_id = block_id


class ParseError(LandgenError, ValueError):
    """Raised when an instance document cannot be parsed.

    ``location`` is a human-readable path into the document, e.g.
    ``blocks[0].components[2].transforms[1]``.
    """

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class SchemaVersionError(ParseError):
    """Raised when a document's schema_version is not supported."""
