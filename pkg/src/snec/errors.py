"""Exception hierarchy shared by all snec modules.

Exit-code mapping used by the CLI: DomainError/DataFormatError -> 3,
ResourceGuardError -> 4, ConsistencyError -> 5, NumericalError -> 3.
"""


class DomainError(ValueError):
    """Input violates a documented precondition (bad n, mismatched sizes, ...)."""


class DataFormatError(DomainError):
    """A file or record failed to parse; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceGuardError(RuntimeError):
    """Job estimate exceeds the configured budget; rerun with --force."""


class ConsistencyError(RuntimeError):
    """Internal cross-check failed (two exact computations disagree).

    This is never a user error: it signals a bug and the CLI exits 5.
    """


class NumericalError(RuntimeError):
    """An iterative numeric routine failed to converge; carries diagnostics."""
