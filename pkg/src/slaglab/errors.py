"""Exception types shared across slaglab.

Every error derives from :class:`SlagLabError`; the ones that signal bad
input also derive from :class:`ValueError` so callers can catch them the
usual way.
"""

from __future__ import annotations


class SlagLabError(Exception):
    """Base class for all slaglab errors."""


# linear algebra
class SingularMatrix(SlagLabError, ValueError):
    pass


class OutOfRange(SlagLabError, ValueError):
    pass


class DimensionMismatch(SlagLabError, ValueError):
    pass


# exact integer algebra
class ElementShapeMismatch(SlagLabError, ValueError):
    pass


class Overflow(SlagLabError, ArithmeticError):
    """Raised if exact integer arithmetic would leave its representable range.

    Python integers are unbounded, so the in-tree code never raises this; it
    exists so alternative backends can honour the same contract.
    """


# characteristic classes
class ParseError(SlagLabError, ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = (), text: str = ""):
        self.position = position
        self.expected = tuple(expected)
        self.text = text
        detail = message
        if self.expected:
            detail += f" (expected {' or '.join(self.expected)})"
        super().__init__(f"{detail} at offset {position}")

    def caret(self) -> str:
        """Two-line diagnostic: the source text and a caret under the offset."""
        return f"{self.text}\n{' ' * self.position}^"


class UnknownAtom(ParseError):
    pass


class NoRingModel(SlagLabError, ValueError):
    pass


class Unsupported(SlagLabError, ValueError):
    pass


class NonOrientable(SlagLabError, ValueError):
    pass


# symplectic numerics
class NotLagrangian(SlagLabError, ValueError):
    pass


class NotClosed(SlagLabError, ValueError):
    pass


class NotOnSphere(SlagLabError, ValueError):
    pass


class RefinementExhausted(SlagLabError, RuntimeError):
    pass


# cones
class InvalidParameter(SlagLabError, ValueError):
    pass


class DegenerateFrame(SlagLabError, ValueError):
    pass


class NoBranchSolution(SlagLabError, ValueError):
    pass


class InsufficientRange(SlagLabError, ValueError):
    pass


# obstruction engine
class MissingField(SlagLabError, ValueError):
    pass


class NotExact(SlagLabError, ValueError):
    pass


class NotOrientable(SlagLabError, ValueError):
    pass


class UnsupportedDimension(SlagLabError, ValueError):
    pass
