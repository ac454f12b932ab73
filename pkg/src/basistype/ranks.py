"""Rank congruences of standard modules.

A non-IBN algebra with Basis Type ``(N, K)`` has ``A^n`` and ``A^m``
unitarily equivalent exactly when ``n == m`` or both ranks are at least
``N`` and ``n - m`` is a multiple of ``K``. This module decides that
relation, picks canonical representatives, and recovers ``(N, K)`` from a
finite set of witnessed equivalences. ``oracle_closure`` is a deliberately
naive union-find closure used to check the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import ArithmeticOverflow, EmptyWitnessSet

INT64_MAX = 2**63 - 1


def checked(value: int, what: str = "result") -> int:
    """Return ``value`` if it fits a signed 64-bit integer, else raise."""
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise ArithmeticOverflow(f"{what} {value} exceeds the 64-bit range")
    return value


def checked_lcm(a: int, b: int) -> int:
    return checked(math.lcm(a, b), f"lcm({a}, {b})")


def checked_add(a: int, b: int) -> int:
    return checked(a + b, f"{a} + {b}")


@dataclass(frozen=True)
class BasisType:
    """The pair ``(N, K)``: least rank involved in a nontrivial equivalence, and the period."""

    n_min: int
    k_period: int

    def __post_init__(self) -> None:
        for name in ("n_min", "k_period"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {v!r}")
            if v < 1:
                raise ValueError(f"{name} must be >= 1, got {v}")
            checked(int(v), name)
            object.__setattr__(self, name, int(v))

    @property
    def N(self) -> int:  # noqa: N802 - mirrors the conventional symbol
        return self.n_min

    @property
    def K(self) -> int:  # noqa: N802
        return self.k_period

    def __iter__(self):
        yield self.n_min
        yield self.k_period

    def __str__(self) -> str:
        return f"({self.n_min},{self.k_period})"

    def to_json(self) -> dict:
        return {"N": self.n_min, "K": self.k_period}

    @classmethod
    def from_json(cls, data: dict) -> "BasisType":
        return cls(data["N"], data["K"])


def _rank(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"rank must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"rank must be >= 0, got {n}")
    return int(n)


def equiv_ranks(t: BasisType, n: int, m: int) -> bool:
    """True iff ``A^n`` and ``A^m`` are equivalent for an algebra of type ``t``."""
    n, m = _rank(n), _rank(m)
    if n == m:
        return True
    return n >= t.n_min and m >= t.n_min and (n - m) % t.k_period == 0


def canonical_rank(t: BasisType, n: int) -> int:
    """Least rank equivalent to ``n``."""
    n = _rank(n)
    if n < t.n_min:
        return n
    return t.n_min + (n - t.n_min) % t.k_period


def class_count(t: BasisType) -> int:
    """Number of equivalence classes of standard modules, the zero module included."""
    return checked_add(t.n_min, t.k_period)


@dataclass(frozen=True)
class EquivalenceWitnessSet:
    """Unordered pairs of distinct positive ranks known to be equivalent."""

    pairs: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        norm = set()
        for pair in self.pairs:
            a, b = (_rank(x) for x in pair)
            if a < 1 or b < 1:
                raise ValueError(f"witness ranks must be >= 1, got {pair}")
            if a == b:
                raise ValueError(f"witness pair {pair} relates a rank to itself")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "pairs", frozenset(norm))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "EquivalenceWitnessSet":
        return cls(frozenset(pairs))

    @classmethod
    def from_iterable(cls, pairs: Iterable[tuple[int, int]]) -> "EquivalenceWitnessSet":
        return cls(frozenset(tuple(p) for p in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def max_rank(self) -> int:
        return max((b for _, b in self.pairs), default=0)

    def as_array(self) -> np.ndarray:
        return np.array(sorted(self.pairs), dtype=np.int64).reshape(-1, 2)


def derive_type(ws: EquivalenceWitnessSet) -> BasisType:
    """Basis Type of the congruence generated by ``ws``: ``(min rank, gcd of differences)``."""
    if not ws.pairs:
        raise EmptyWitnessSet("no equivalence witnesses; the algebra may have IBN")
    n_min = min(a for a, _ in ws.pairs)
    k = reduce(math.gcd, (b - a for a, b in ws.pairs))
    return BasisType(n_min, k)


def closure_labels(ws: EquivalenceWitnessSet, bound: int) -> np.ndarray:
    """Class-minimum label for each rank ``0..bound`` (see :func:`oracle_closure`)."""
    if bound < 1:
        raise ValueError("bound must be positive")
    if ws.max_rank() > bound:
        raise ValueError(f"witness rank {ws.max_rank()} exceeds bound {bound}")
    return _kernels.closure_labels(ws.as_array(), bound)


def labels_to_partition(labels: np.ndarray) -> tuple[tuple[int, ...], ...]:
    classes: dict[int, list[int]] = {}
    for x, lab in enumerate(labels.tolist()):
        classes.setdefault(lab, []).append(x)
    return tuple(tuple(c) for _, c in sorted(classes.items()))


def oracle_closure(ws: EquivalenceWitnessSet, bound: int) -> tuple[tuple[int, ...], ...]:
    """Smallest translation-closed equivalence on ``{0..bound}`` containing ``ws``.

    Classes are returned sorted internally and ordered by their least element.
    """
    return labels_to_partition(closure_labels(ws, bound))


def equiv_matrix(t: BasisType, bound: int) -> np.ndarray:
    """Vectorised :func:`equiv_ranks` over ``{0..bound}``."""
    return _kernels.equiv_matrix(t.n_min, t.k_period, bound)


def partition_matrix(labels: np.ndarray) -> np.ndarray:
    return _kernels.labels_to_matrix(labels)
