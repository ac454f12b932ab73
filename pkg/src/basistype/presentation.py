"""Finitely presented *-algebras and a deterministic rewriting normaliser.

A :class:`Presentation` holds two kinds of rules:

* monomial rules ``word -> poly`` whose left side is strictly longer than
  every word on the right (so repeated application terminates);
* sum contractions ``w_1 + ... + w_r -> poly``, matched only when every
  ``L w_i R`` occurs with one common coefficient ``c`` and the same context
  ``L``/``R``; the match is replaced by ``c L poly R``.

:func:`normalize` rewrites monomials leftmost first to a fixpoint, then
alternates one contraction with a monomial pass until nothing applies.
The result is a normal form for these strategies, not a decision of
equality in the algebra.
"""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Inconclusive
from .ncpoly import UNIT, Letter, NCPoly, Word, involute, word_star, word_str

DEFAULT_STEP_BOUND = 10_000
STEP_BOUND_ENV = "IBN_STEP_BOUND"


def step_bound_from_env(default: int = DEFAULT_STEP_BOUND) -> int:
    raw = os.environ.get(STEP_BOUND_ENV)
    if raw is None or not raw.strip():
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{STEP_BOUND_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class MonomialRule:
    lhs: Word
    rhs: NCPoly

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", tuple(self.lhs))
        if not self.lhs:
            raise ValueError("monomial rule with empty left-hand side")
        longest = max((len(w) for w, _ in self.rhs.terms), default=0)
        if longest >= len(self.lhs):
            raise ValueError(f"monomial rule {word_str(self.lhs)} -> {self.rhs} is not length-decreasing")

    def __str__(self) -> str:
        return f"{word_str(self.lhs)} -> {self.rhs}"


@dataclass(frozen=True)
class ContractionRule:
    words: tuple[Word, ...]
    rhs: NCPoly

    def __post_init__(self) -> None:
        words = tuple(tuple(w) for w in self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise ValueError("contraction rule needs at least one word")
        if len(set(words)) != len(words):
            raise ValueError("contraction rule words must be distinct")
        if any(not w for w in words):
            raise ValueError("contraction rule words must be nonempty")

    def __str__(self) -> str:
        return " + ".join(word_str(w) for w in self.words) + f" -> {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple[str, ...]
    monomial_rules: tuple[MonomialRule, ...] = ()
    contraction_rules: tuple[ContractionRule, ...] = ()
    _by_first: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _contr_by_first: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        mono = list(self.monomial_rules)
        contr = []
        for rule in self.contraction_rules:
            # a one-word contraction is an ordinary monomial rule
            if len(rule.words) == 1:
                mono.append(MonomialRule(rule.words[0], rule.rhs))
            else:
                contr.append(rule)
        object.__setattr__(self, "monomial_rules", tuple(mono))
        object.__setattr__(self, "contraction_rules", tuple(contr))
        by_first: dict[Letter, list[MonomialRule]] = {}
        for rule in mono:
            by_first.setdefault(rule.lhs[0], []).append(rule)
        contr_by_first: dict[Letter, list[ContractionRule]] = {}
        for rule in contr:
            contr_by_first.setdefault(rule.words[0][0], []).append(rule)
        object.__setattr__(self, "_by_first", by_first)
        object.__setattr__(self, "_contr_by_first", contr_by_first)
        known = set(self.generators)
        for rule in mono:
            used = {x.gen for x in rule.lhs} | rule.rhs.generators()
            if not used <= known:
                raise ValueError(f"rule {rule} uses undeclared generators {sorted(used - known)}")
        for rule in contr:
            used = {x.gen for w in rule.words for x in w} | rule.rhs.generators()
            if not used <= known:
                raise ValueError(f"rule {rule} uses undeclared generators {sorted(used - known)}")

    def involution_defects(self) -> list[str]:
        """Rules whose adjoint is not derivable from the rule set (empty when closed)."""
        defects = []
        for rule in self.monomial_rules:
            lhs_star = NCPoly.word(word_star(rule.lhs))
            try:
                if normalize(lhs_star - involute(rule.rhs), self) != NCPoly.zero():
                    defects.append(str(rule))
            except Inconclusive:
                defects.append(str(rule))
        shapes = {(frozenset(r.words), r.rhs) for r in self.contraction_rules}
        for rule in self.contraction_rules:
            adj = (frozenset(word_star(w) for w in rule.words), involute(rule.rhs))
            if adj not in shapes:
                defects.append(str(rule))
        return defects

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# built-in presentations
# ---------------------------------------------------------------------------


def _v(i: int, adj: bool = False) -> Letter:
    return Letter(f"v{i}", adj)


def _u(i: int, j: int, adj: bool = False) -> Letter:
    return Letter(f"u{i}_{j}", adj)


def _delta(i: int, j: int) -> NCPoly:
    return NCPoly.one() if i == j else NCPoly.zero()


def _isometry_rules(n: int) -> tuple[MonomialRule, ...]:
    return tuple(MonomialRule((_v(i, True), _v(j)), _delta(i, j)) for i in range(1, n + 1) for j in range(1, n + 1))


@functools.lru_cache(maxsize=None)
def cuntz(n: int) -> Presentation:
    """``n`` isometries with orthogonal ranges summing to the unit."""
    if not 2 <= n <= 9:
        raise ValueError(f"cuntz presentations are available for 2 <= n <= 9 (generators v1..v9), got {n}")
    completeness = ContractionRule(tuple((_v(i), _v(i, True)) for i in range(1, n + 1)), NCPoly.one())
    return Presentation(f"cuntz:{n}", tuple(f"v{i}" for i in range(1, n + 1)), _isometry_rules(n), (completeness,))


@functools.lru_cache(maxsize=None)
def toeplitz2() -> Presentation:
    """Two isometries with orthogonal ranges and no completeness relation."""
    return Presentation("toeplitz2", ("v1", "v2"), _isometry_rules(2), ())


@functools.lru_cache(maxsize=None)
def unc(m: int, n: int) -> Presentation:
    """Entries of an ``m x n`` matrix ``U`` with ``UU* = I_m`` and ``U*U = I_n``."""
    if not 1 <= m < n:
        raise ValueError(f"unc presentations need 1 <= m < n, got ({m}, {n})")
    gens = tuple(f"u{i}_{j}" for i in range(1, m + 1) for j in range(1, n + 1))
    rows = [
        ContractionRule(tuple((_u(i, k), _u(j, k, True)) for k in range(1, n + 1)), _delta(i, j))
        for i in range(1, m + 1)
        for j in range(1, m + 1)
    ]
    cols = [
        ContractionRule(tuple((_u(k, i, True), _u(k, j)) for k in range(1, m + 1)), _delta(i, j))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    ]
    return Presentation(f"unc:{m},{n}", gens, (), tuple(rows + cols))


_PRES_RE = re.compile(r"^(?:cuntz:(\d+)|unc:(\d+),(\d+)|(toeplitz2))$")


def get_presentation(pres_id: str) -> Presentation:
    """Resolve ``"cuntz:n"``, ``"unc:m,n"`` or ``"toeplitz2"``."""
    m = _PRES_RE.match(pres_id.replace(" ", ""))
    if m is None:
        raise ValueError(f"unknown presentation {pres_id!r}; expected cuntz:n, unc:m,n or toeplitz2")
    if m.group(1):
        return cuntz(int(m.group(1)))
    if m.group(4):
        return toeplitz2()
    return unc(int(m.group(2)), int(m.group(3)))


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("left", "bound")

    def __init__(self, bound: int):
        self.bound = bound
        self.left = bound

    def spend(self) -> None:
        if self.left <= 0:
            raise Inconclusive(f"rewriting exceeded the step bound of {self.bound}")
        self.left -= 1


def _leftmost_redex(w: Word, pres: Presentation):
    for i, letter in enumerate(w):
        for rule in pres._by_first.get(letter, ()):
            k = len(rule.lhs)
            if w[i : i + k] == rule.lhs:
                return i, rule
    return None


def _reduce_word(w: Word, pres: Presentation, budget: _Budget, memo: dict) -> dict[Word, Fraction]:
    cached = memo.get(w)
    if cached is not None:
        return cached
    hit = _leftmost_redex(w, pres)
    if hit is None:
        out = {w: Fraction(1)}
    else:
        budget.spend()
        i, rule = hit
        out: dict[Word, Fraction] = {}
        prefix, suffix = w[:i], w[i + len(rule.lhs) :]
        for rw, rc in rule.rhs.terms:
            for nw, nc in _reduce_word(prefix + rw + suffix, pres, budget, memo).items():
                out[nw] = out.get(nw, 0) + rc * nc
        out = {k: v for k, v in out.items() if v != 0}
    memo[w] = out
    return out


def _monomial_pass(p: NCPoly, pres: Presentation, budget: _Budget, memo: dict) -> NCPoly:
    if not pres.monomial_rules:
        return p
    acc: dict[Word, Fraction] = {}
    for w, c in p.terms:
        for nw, nc in _reduce_word(w, pres, budget, memo).items():
            acc[nw] = acc.get(nw, 0) + c * nc
    return NCPoly._from_dict(acc)


def _find_contraction(p: NCPoly, pres: Presentation):
    if not pres.contraction_rules:
        return None
    coeffs = dict(p.terms)
    # rule order first, then term order, then position
    for rule in pres.contraction_rules:
        anchor = rule.words[0]
        k = len(anchor)
        for w, c in p.terms:
            for i in range(len(w) - k + 1):
                if w[i : i + k] != anchor:
                    continue
                left, right = w[:i], w[i + k :]
                if all(coeffs.get(left + other + right) == c for other in rule.words[1:]):
                    return rule, left, right, c
    return None


def _apply_contraction(p: NCPoly, rule: ContractionRule, left: Word, right: Word, c: Fraction) -> NCPoly:
    acc = p.as_dict()
    for w in rule.words:
        acc[left + w + right] -= c
    for rw, rc in rule.rhs.terms:
        key = left + rw + right
        acc[key] = acc.get(key, 0) + c * rc
    return NCPoly._from_dict(acc)


def normalize(p: NCPoly, pres: Presentation, step_bound: int = DEFAULT_STEP_BOUND) -> NCPoly:
    """Normal form of ``p`` under ``pres``.

    Raises :class:`~basistype.errors.Inconclusive` when more than
    ``step_bound`` rule applications would be needed.
    """
    budget = _Budget(step_bound)
    memo: dict = {}
    p = _monomial_pass(p, pres, budget, memo)
    while True:
        hit = _find_contraction(p, pres)
        if hit is None:
            return p
        budget.spend()
        p = _apply_contraction(p, *hit)
        p = _monomial_pass(p, pres, budget, memo)


def is_zero_in(p: NCPoly, pres: Presentation, step_bound: int = DEFAULT_STEP_BOUND) -> bool:
    """True if ``p`` rewrites to zero; ``False`` covers both a nonzero normal form and an exhausted budget."""
    try:
        return normalize(p, pres, step_bound).is_zero()
    except Inconclusive:
        return False


__all__ = [
    "DEFAULT_STEP_BOUND",
    "ContractionRule",
    "MonomialRule",
    "Presentation",
    "UNIT",
    "cuntz",
    "get_presentation",
    "is_zero_in",
    "normalize",
    "step_bound_from_env",
    "toeplitz2",
    "unc",
]
