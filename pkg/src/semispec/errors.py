"""Error classes, one per CLI exit code."""


class SemispecError(Exception):
    exit_code = 1


class FormatError(SemispecError):
    """Malformed input: JSON schema, table shape, parse errors."""

    exit_code = 3


class UnknownNameError(SemispecError):
    """Name not present in the registry or corpus."""

    exit_code = 4


class PreconditionError(SemispecError):
    """Operation precondition violated (wrong kind, malformed call, ...)."""

    exit_code = 5


class ResourceError(SemispecError):
    """A configured size or iteration budget was exceeded."""

    exit_code = 8


class VerificationError(SemispecError):
    """A verification run came back red."""

    exit_code = 6


class InternalCheckError(SemispecError):
    """A cross-check that should hold by theory failed; indicates a bug."""

    exit_code = 7
