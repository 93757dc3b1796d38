"""Exception hierarchy shared across the library and mapped to CLI exit codes."""

from __future__ import annotations


class QtoricError(Exception):
    """Base class for all library errors."""


class DimensionError(QtoricError):
    """Operands live in different ambient dimensions."""


class ModelParseError(QtoricError):
    """A model file or a name reference could not be resolved.

    Carries an optional (line, column) position, both 1-based.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class PreconditionError(QtoricError):
    """A documented precondition of an operation is violated.

    ``certificate`` holds machine-readable evidence (e.g. a witness vector).
    """

    def __init__(self, message: str, certificate: object = None):
        self.certificate = certificate
        super().__init__(message)


class NotNormalError(PreconditionError):
    """An operation requiring a normal semigroup was given a non-normal one.

    ``witness_g`` is a group element outside S and ``witness_p`` a positive
    integer with p*g in S.
    """

    def __init__(self, message: str, witness_g, witness_p: int):
        self.witness_g = witness_g
        self.witness_p = witness_p
        super().__init__(message, certificate=(witness_g, witness_p))


class SizeLimitError(PreconditionError):
    """An input exceeds the declared desk-scale limits or a search bound."""


class VerificationError(QtoricError):
    """An internal consistency check failed; indicates a bug, never bad input."""
