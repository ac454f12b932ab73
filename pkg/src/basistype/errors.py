"""Exception hierarchy shared by the library and the CLI.

Every domain error carries a stable ``code`` string; the CLI maps the
class to an exit code and serialises ``code``/``message``/``anchor``.
"""

from __future__ import annotations


class BasisTypeError(Exception):
    code = "Error"

    def __init__(self, message: str, anchor: str | None = None):
        super().__init__(message)
        self.message = message
        self.anchor = anchor

    def to_json(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.anchor:
            out["anchor"] = self.anchor
        return out


class ArithmeticOverflow(BasisTypeError, OverflowError):
    code = "ArithmeticOverflow"


class EmptyWitnessSet(BasisTypeError, ValueError):
    code = "EmptyWitnessSet"


class NotEquivalent(BasisTypeError, ValueError):
    code = "NotEquivalent"


class NotFound(BasisTypeError, KeyError):
    code = "NotFound"

    def __str__(self) -> str:
        return self.message


class UnknownCatalogId(NotFound):
    code = "UnknownCatalogId"


class NotExact(BasisTypeError, ValueError):
    code = "NotExact"


class IndexOutOfRange(BasisTypeError, IndexError):
    code = "IndexOutOfRange"


class Inconclusive(BasisTypeError):
    """Rewriting hit its step bound before reaching a fixpoint."""

    code = "Inconclusive"


class ParseError(BasisTypeError, ValueError):
    code = "ParseError"

    def __init__(self, message: str, offset: int, expected: frozenset[str] | set[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)

    def to_json(self) -> dict:
        out = super().to_json()
        out["offset"] = self.offset
        out["expected"] = sorted(self.expected)
        return out


class ArityError(ParseError):
    code = "ArityError"


class CatalogValidationError(BasisTypeError, ValueError):
    code = "CatalogValidationError"
