"""Noncommutative *-polynomials with exact rational coefficients.

A :class:`Letter` is a generator name plus an adjoint flag; a word is a
tuple of letters (the empty tuple is the unit). :class:`NCPoly` maps words
to nonzero :class:`fractions.Fraction` coefficients.

Text syntax::

    poly  := term (("+" | "-") term)* | "0"
    term  := [coef] factor*          (at least one of coef / factor)
    coef  := INT ["/" INT]
    factor:= ("v" DIGIT | "u" INT "_" INT) ["'"]

Juxtaposition (with whitespace) is the product, ``'`` the adjoint and ``1``
the unit, e.g. ``"v1 v1' + v2 v2'"`` or ``"-1/2 u1_2' u2_2"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import ParseError

_GEN_RE = re.compile(r"v([1-9])$|u([1-9][0-9]*)_([1-9][0-9]*)$")


def _gen_key(gen: str) -> tuple:
    m = _GEN_RE.match(gen)
    if m is None:
        return (2, gen)
    if m.group(1):
        return (0, int(m.group(1)))
    return (1, int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class Letter:
    gen: str
    adj: bool = False

    def star(self) -> "Letter":
        return Letter(self.gen, not self.adj)

    def sort_key(self) -> tuple:
        return (_gen_key(self.gen), self.adj)

    def __str__(self) -> str:
        return self.gen + ("'" if self.adj else "")


Word = tuple  # tuple[Letter, ...]; the empty word is the unit

UNIT: Word = ()


def word_key(w: Word) -> tuple:
    return (len(w), tuple(x.sort_key() for x in w))


def word_star(w: Word) -> Word:
    return tuple(x.star() for x in reversed(w))


def word_str(w: Word) -> str:
    return " ".join(str(x) for x in w) if w else "1"


def gen(name: str, adj: bool = False) -> "NCPoly":
    return NCPoly({(Letter(name, adj),): 1})


Scalar = Union[int, Fraction]


class NCPoly:
    """Finitely supported linear combination of words.

    Immutable and hashable; equality is by canonical term list.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        acc: dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, Fraction(0)) + Fraction(c)
        self._terms = tuple(sorted(((w, c) for w, c in acc.items() if c != 0), key=lambda t: word_key(t[0])))
        self._hash = None

    @classmethod
    def _from_dict(cls, acc: dict) -> "NCPoly":
        p = cls.__new__(cls)
        p._terms = tuple(sorted(((w, c) for w, c in acc.items() if c != 0), key=lambda t: word_key(t[0])))
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({UNIT: 1})

    @classmethod
    def scalar(cls, c: Scalar) -> "NCPoly":
        return cls({UNIT: c})

    @classmethod
    def word(cls, w: Word, c: Scalar = 1) -> "NCPoly":
        return cls({tuple(w): c})

    @property
    def terms(self) -> tuple[tuple[Word, Fraction], ...]:
        return self._terms

    def as_dict(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    @staticmethod
    def _coerce(other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return NCPoly.scalar(other)
        return NotImplemented

    def __add__(self, other) -> "NCPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms:
            acc[w] = acc.get(w, 0) + c
        return NCPoly._from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._from_dict({w: -c for w, c in self._terms})

    def __sub__(self, other) -> "NCPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "NCPoly":
        return (-self) + other

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            return NCPoly._from_dict({w: c * other for w, c in self._terms})
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc: dict[Word, Fraction] = {}
        for w1, c1 in self._terms:
            for w2, c2 in other._terms:
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return NCPoly._from_dict(acc)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def star(self) -> "NCPoly":
        return involute(self)

    def generators(self) -> set[str]:
        return {x.gen for w, _ in self._terms for x in w}

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"NCPoly({format_poly(self)!r})"


def involute(p: NCPoly) -> NCPoly:
    """Adjoint: reverse every word and flip adjoint flags (rational coefficients are self-conjugate)."""
    return NCPoly._from_dict({word_star(w): c for w, c in p.terms})


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NCPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (w, c) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not w:
            body = _format_coef(a)
        elif a == 1:
            body = word_str(w)
        else:
            body = f"{_format_coef(a)} {word_str(w)}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TOKEN_RE = re.compile(
    r"(?:(?P<gen>v[1-9](?![0-9_])|u[1-9][0-9]*_[1-9][0-9]*)(?P<adj>')?|(?P<num>[0-9]+(?:/[0-9]+)?)|(?P<op>[+-]))"
)


def parse_poly(text: str) -> NCPoly:
    """Parse the polynomial text syntax; raises :class:`ParseError` with a byte offset."""
    pos = 0
    n = len(text)
    terms: list[tuple[Word, Fraction]] = []
    sign = 1
    sign_seen = False
    coef: Fraction | None = None
    word: list[Letter] = []

    def byte_offset(i: int) -> int:
        return len(text[:i].encode("utf-8"))

    def flush(at: int) -> None:
        nonlocal coef, word, sign, sign_seen
        if coef is None and not word:
            raise ParseError("empty term", byte_offset(at), {"coefficient", "generator"})
        c = coef if coef is not None else Fraction(1)
        terms.append((tuple(word), sign * c))
        coef, word, sign, sign_seen = None, [], 1, False

    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", byte_offset(pos), {"generator", "coefficient", "+", "-"}
            )
        start = pos
        if m.group("op"):
            if coef is not None or word:
                flush(start)
            elif sign_seen or terms:
                raise ParseError("operator without operand", byte_offset(start), {"generator", "coefficient"})
            sign = -1 if m.group("op") == "-" else 1
            sign_seen = True
        elif m.group("num"):
            if coef is not None or word:
                raise ParseError("coefficient must precede generators", byte_offset(start), {"generator", "+", "-"})
            num, _, den = m.group("num").partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", byte_offset(start))
            coef = Fraction(int(num), int(den) if den else 1)
        else:
            word.append(Letter(m.group("gen"), bool(m.group("adj"))))
        pos = m.end()
    if coef is None and not word:
        what = "dangling operator" if (terms or sign_seen) else "empty polynomial"
        raise ParseError(what, byte_offset(n), {"generator", "coefficient"})
    flush(n)
    return NCPoly(terms)
