"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AppellError(Exception):
    """Base class for all errors raised by :mod:`appellconv`."""


class PreconditionError(AppellError, ValueError):
    """An argument violates a documented precondition."""


class OrderError(AppellError, IndexError):
    """A degree exceeds the truncation order of a sequence."""


class NotInvertibleError(AppellError, ZeroDivisionError):
    """A sequence with vanishing zeroth term has no convolution inverse."""


class CatalogError(AppellError, KeyError):
    """Unknown or malformed random-variable name."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class ConsistencyError(AppellError, AssertionError):
    """Two independent routes to the same exact value disagree.

    Both values are kept on the instance so callers can report them.
    """

    def __init__(self, what: str, left, right):
        super().__init__(f"{what}: {left} != {right}")
        self.what = what
        self.left = left
        self.right = right
