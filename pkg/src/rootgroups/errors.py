"""Exception types shared across the package."""

from __future__ import annotations


class GroupError(Exception):
    """Base class for every error raised by rootgroups."""


class CapExceeded(GroupError):
    def __init__(self, cap: int, bound: int | None = None, what: str = "closure"):
        self.cap = cap
        self.bound = bound
        msg = f"{what} exceeds cap {cap}"
        if bound is not None:
            msg += f" (order bound {bound})"
        super().__init__(msg)


class NotSubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotSubnormal(GroupError):
    pass


class NotEnumerated(GroupError):
    pass


class NotCentralSeries(GroupError):
    def __init__(self, side: str, index: int):
        self.side = side
        self.index = index
        super().__init__(f"series {side} is not central at index {index}")


class FactorsNotInClass(GroupError):
    pass


class EmbedVerificationFailed(GroupError):
    pass


class NotInjectiveOnFactor(GroupError):
    pass


class IncompatibleKernels(GroupError):
    pass


class CombineFailed(GroupError):
    def __init__(self, diagnostics: list[str]):
        self.diagnostics = diagnostics
        super().__init__("combine_wreath failed: " + "; ".join(diagnostics))


class PreconditionFailed(GroupError):
    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(f"precondition failed: {clause}")


class UntaggedLetter(GroupError):
    pass


class UnknownEntry(GroupError):
    pass


class ParseError(GroupError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
