"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class OctoRamseyError(Exception):
    """Base class for every error raised by this package."""


class TermSyntaxError(OctoRamseyError, ValueError):
    """Malformed term text. ``offset`` is the byte offset of the failure."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class NotGround(OctoRamseyError, ValueError):
    pass


class UnboundVariable(OctoRamseyError, KeyError):
    def __init__(self, index: int) -> None:
        super().__init__(index)
        self.index = index

    def __str__(self) -> str:
        return f"variable x{self.index} has no assigned value"


class NotVariableTerm(OctoRamseyError, ValueError):
    pass


class NotOrderly(OctoRamseyError, ValueError):
    pass


class EmptyIndexList(OctoRamseyError, ValueError):
    pass


class NotSameSkeleton(OctoRamseyError, ValueError):
    pass


class EqualTerms(OctoRamseyError, ValueError):
    pass


class InvalidDigits(OctoRamseyError, ValueError):
    pass


class CapExceeded(OctoRamseyError, ValueError):
    pass


class PrecedenceViolated(OctoRamseyError, ValueError):
    pass


class MalformedTable(OctoRamseyError, ValueError):
    pass


class NotAGroup(OctoRamseyError, ValueError):
    pass


class NotMoufang(OctoRamseyError, ValueError):
    pass


class BracketingDisagreement(OctoRamseyError, ArithmeticError):
    """Two bracketings of the same power disagreed; diassociativity is violated."""


class NotMG2Shaped(OctoRamseyError, ValueError):
    pass
