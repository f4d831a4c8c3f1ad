"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so new errors should subclass one of the
category bases rather than ``Exception`` directly.
"""


class ModStarError(Exception):
    """Base class for all library errors."""


class DomainError(ModStarError, ValueError):
    """An operation was called outside its mathematical precondition."""


class ModulusError(DomainError):
    """Modulus has the wrong size or shape for the operation."""


class CoprimalityError(DomainError):
    """An argument shares a factor with the modulus."""


class LimitExceededError(DomainError):
    """Requested size exceeds a configured resource bound."""


class InvalidBaseError(DomainError):
    """Survey base is not admissible (e.g. a perfect square)."""


class LevelInapplicableError(DomainError):
    """Closed-form square root level does not apply to this modulus."""


class NonResidueError(DomainError):
    """Argument is not a (bi)quadratic residue where one is required."""


class CheckpointError(ModStarError):
    """A survey checkpoint file is corrupt or belongs to another run."""

    def __init__(self, message: str, line_no: int | None = None, row: str | None = None):
        if line_no is not None:
            message = f"{message} (line {line_no}: {row!r})"
        super().__init__(message)
        self.line_no = line_no
        self.row = row


class ConsistencyError(ModStarError):
    """An internal cross-check failed; indicates an arithmetic bug."""
