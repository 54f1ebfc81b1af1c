"""
Error hierarchy for the aitgl workbench
"""

from typing import Optional


class AitglError(Exception):
    """Base class for all workbench errors"""


class UsageError(AitglError):
    """A command-line flag or parameter is out of its documented range"""

    def __init__(self, message: str, flag: Optional[str] = None):
        self.flag = flag
        super().__init__(f"{flag}: {message}" if flag else message)


class InvariantBreach(AitglError):
    """A structural invariant failed; carries the invariant name and the step"""

    def __init__(self, invariant: str, message: str, step: Optional[int] = None):
        self.invariant = invariant
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"[{invariant}]{where}: {message}")


class RuleViolation(InvariantBreach):
    """Alice painted more than w distinct strings of one length"""

    def __init__(self, length: int, w: int, step: Optional[int] = None):
        self.length = length
        self.w = w
        super().__init__(
            "alice_quota",
            f"Alice would paint {w + 1} distinct strings of length {length}",
            step,
        )


class CapacityOverflowError(InvariantBreach):
    """More than w tokens were needed; the observed set broke its width promise"""

    def __init__(self, w: int, step: Optional[int] = None):
        self.w = w
        super().__init__("token_capacity", f"token {w + 1} requested with capacity {w}", step)


class WrongTurnError(AitglError):
    """A player moved out of turn"""


class DuplicateObservationError(AitglError):
    """The same string was observed twice by a token board"""
