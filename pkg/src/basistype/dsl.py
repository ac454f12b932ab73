"""Text syntax for algebra expressions.

::

    expr := atom | oplus(expr, expr) | tensor(expr, expr) | quotient(expr)
          | hom(expr) | ext(expr) | limit(expr {, expr}) | corner_infinite_simple
    atom := O(int) | Oinf | Unc(int, int) | Toeplitz | T2 | BH | Commutative
          | Rordam(int) | type(int, int) | ibn

Whitespace between tokens is ignored. Errors report a byte offset into the
UTF-8 source and the set of tokens that would have been accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .calculus import (
    AlgebraExpr,
    CornerOfInfiniteSimple,
    DirectSum,
    ExactLeaf,
    ExtensionOf,
    HomImage,
    IbnLeaf,
    InductiveLimit,
    Leaf,
    Quotient,
    Tensor,
)
from .errors import ArityError, ParseError
from .ranks import INT64_MAX, BasisType

BINARY = {"oplus": DirectSum, "tensor": Tensor}
UNARY = {"quotient": Quotient, "hom": HomImage, "ext": ExtensionOf}
NULLARY_LEAVES = {"Oinf", "Toeplitz", "T2", "BH", "Commutative"}
KEYWORDS = (
    set(BINARY) | set(UNARY) | NULLARY_LEAVES | {"limit", "corner_infinite_simple", "O", "Unc", "Rordam", "type", "ibn"}
)

_TOKEN_RE = re.compile(r"(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<punct>[(),])")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "punct" or "eof"
    text: str
    offset: int  # byte offset


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    byte = 0
    while pos < len(src):
        ch = src[pos]
        if ch.isspace():
            byte += len(ch.encode("utf-8"))
            pos += 1
            continue
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", byte, {"identifier", "integer", "(", ")", ","})
        text = m.group(0)
        tokens.append(Token(m.lastgroup, text, byte))
        byte += len(text.encode("utf-8"))
        pos = m.end()
    tokens.append(Token("eof", "", byte))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind == "eof":
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise ParseError(f"expected {text!r}, found {found}", tok.offset, {text})
        return self.advance()

    def integer(self) -> tuple[int, int]:
        tok = self.tok
        if tok.kind != "int":
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise ParseError(f"expected a positive integer, found {found}", tok.offset, {"integer"})
        if tok.text.startswith("0"):
            raise ParseError(f"integers must be nonzero without leading zeros, found {tok.text!r}", tok.offset, {"integer"})
        value = int(tok.text)
        if value > INT64_MAX:
            raise ArityError(f"integer {tok.text} exceeds the 64-bit range", tok.offset)
        self.advance()
        return value, tok.offset

    def expr(self) -> AlgebraExpr:
        tok = self.tok
        if tok.kind != "ident" or tok.text not in KEYWORDS:
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise ParseError(f"expected an expression, found {found}", tok.offset, KEYWORDS)
        name = self.advance().text
        if name in BINARY:
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return BINARY[name](left, right)
        if name in UNARY:
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return UNARY[name](inner)
        if name == "limit":
            self.expect("(")
            parts = [self.expr()]
            while self.tok.text == ",":
                self.advance()
                parts.append(self.expr())
            self.expect(")")
            return InductiveLimit(tuple(parts))
        if name == "corner_infinite_simple":
            return CornerOfInfiniteSimple()
        if name == "ibn":
            return IbnLeaf()
        if name in NULLARY_LEAVES:
            return Leaf(name)
        if name == "O":
            self.expect("(")
            n, at = self.integer()
            self.expect(")")
            if n < 2:
                raise ArityError(f"O(n) needs n >= 2, got {n}", at)
            return Leaf(f"O:{n}")
        if name == "Rordam":
            self.expect("(")
            n, _ = self.integer()
            self.expect(")")
            return Leaf(f"Rordam:{n}")
        # Unc and type take two integers
        self.expect("(")
        a, _ = self.integer()
        self.expect(",")
        b, at_b = self.integer()
        self.expect(")")
        if name == "Unc":
            if b <= a:
                raise ArityError(f"Unc(m,n) needs n > m, got Unc({a},{b})", at_b)
            return Leaf(f"Unc:{a},{b}")
        return ExactLeaf(BasisType(a, b))

    def parse(self) -> AlgebraExpr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected trailing input {self.tok.text!r}", self.tok.offset, {"end of input"})
        return e


def parse(src: str) -> AlgebraExpr:
    """Parse one expression; raises :class:`ParseError` or :class:`ArityError`."""
    return _Parser(src).parse()


_LEAF_RE = re.compile(r"^(?:O:(\d+)|Unc:(\d+),(\d+)|Rordam:(\d+))$")


def _leaf_text(catalog_id: str) -> str:
    if catalog_id in NULLARY_LEAVES:
        return catalog_id
    m = _LEAF_RE.match(catalog_id)
    if m is None:
        raise ValueError(f"catalog id {catalog_id!r} has no expression syntax")
    if m.group(1):
        return f"O({m.group(1)})"
    if m.group(2):
        return f"Unc({m.group(2)},{m.group(3)})"
    return f"Rordam({m.group(4)})"


def to_dsl(e: AlgebraExpr) -> str:
    """Canonical text of ``e``; ``parse(to_dsl(e)) == e``."""
    if isinstance(e, Leaf):
        return _leaf_text(e.catalog_id)
    if isinstance(e, ExactLeaf):
        return f"type({e.type.n_min},{e.type.k_period})"
    if isinstance(e, IbnLeaf):
        return "ibn"
    if isinstance(e, CornerOfInfiniteSimple):
        return "corner_infinite_simple"
    if isinstance(e, DirectSum):
        return f"oplus({to_dsl(e.left)},{to_dsl(e.right)})"
    if isinstance(e, Tensor):
        return f"tensor({to_dsl(e.left)},{to_dsl(e.right)})"
    if isinstance(e, Quotient):
        return f"quotient({to_dsl(e.inner)})"
    if isinstance(e, HomImage):
        return f"hom({to_dsl(e.inner)})"
    if isinstance(e, ExtensionOf):
        return f"ext({to_dsl(e.quotient_target)})"
    if isinstance(e, InductiveLimit):
        return "limit(" + ",".join(to_dsl(p) for p in e.parts) + ")"
    raise TypeError(f"not an algebra expression: {e!r}")


def presentation_for_atom(e: AlgebraExpr) -> str | None:
    """Presentation id usable by :func:`~basistype.matrices.witness` for an ``O(n)``/``Unc(m,n)`` leaf."""
    if not isinstance(e, Leaf):
        return None
    m = _LEAF_RE.match(e.catalog_id)
    if m is None:
        return None
    if m.group(1):
        return f"cuntz:{m.group(1)}"
    if m.group(2):
        return f"unc:{m.group(2)},{m.group(3)}"
    return None
