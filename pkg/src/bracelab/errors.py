"""Exception hierarchy shared by every bracelab module."""


class BraceError(Exception):
    """Base class for bracelab errors."""


class StructureError(BraceError):
    """A table or file is malformed (ragged rows, out-of-range entries, bad header)."""


class AxiomError(BraceError):
    """A well-formed table violates the left brace axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UsageError(BraceError):
    """An operation was called outside its preconditions."""


class ResourceError(BraceError):
    """A configured size cap would be exceeded."""
