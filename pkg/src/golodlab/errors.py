"""Exception hierarchy shared by every layer of the package."""


class GolodlabError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(GolodlabError):
    """Input document violates the problem-spec schema (CLI exit 2)."""


class CapError(GolodlabError):
    """Requested computation exceeds or misuses the degree/homology caps (CLI exit 3)."""


class InternalInvariantError(GolodlabError):
    """An internal mathematical invariant was violated; always a bug (CLI exit 4)."""


class PolyParseError(GolodlabError):
    """Syntax or semantic error while parsing a polynomial string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RingMismatchError(GolodlabError):
    """Operands belong to different polynomial rings."""
