"""Propagation of Basis Type knowledge through algebra constructions.

Each node of an :data:`AlgebraExpr` tree is evaluated bottom-up to a
:class:`Knowledge` value: an IBN status plus an interval ``lo <= type <= hi``
in the Basis Type lattice. Exact rules (direct sums) pin the interval;
inequality rules (tensor products, images, limits, corners) only move one
side. When the status is ``UNKNOWN`` the interval is conditional: it bounds
the type *if* the algebra turns out not to have IBN.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import UnknownCatalogId
from .lattice import BOTTOM, join, leq
from .ranks import BasisType, _rank, checked_lcm, equiv_ranks


class Status(enum.Enum):
    KNOWN_IBN = "IBN"
    KNOWN_NON_IBN = "NonIBN"
    UNKNOWN = "Unknown"


class Sentinel(enum.Enum):
    """Top values of the upper-bound coordinates."""

    INFINITY = "Infinity"
    ANY_K = "AnyK"

    def __repr__(self) -> str:
        return self.value


INFINITY = Sentinel.INFINITY
ANY_K = Sentinel.ANY_K

UpperN = Union[int, Sentinel]
UpperK = Union[int, Sentinel]


# upper-bound coordinate algebra -------------------------------------------


def _join_n(a: UpperN, b: UpperN) -> UpperN:
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return max(a, b)


def _join_k(a: UpperK, b: UpperK) -> UpperK:
    if a is ANY_K or b is ANY_K:
        return ANY_K
    return checked_lcm(a, b)


def _meet_n(a: UpperN, b: UpperN) -> UpperN:
    if a is INFINITY:
        return b
    if b is INFINITY:
        return a
    return min(a, b)


def _meet_k(a: UpperK, b: UpperK) -> UpperK:
    if a is ANY_K:
        return b
    if b is ANY_K:
        return a
    return math.gcd(a, b)


def _le_n(a: UpperN, b: UpperN) -> bool:
    if b is INFINITY:
        return True
    return a is not INFINITY and a <= b


def _divides_k(a: UpperK, b: UpperK) -> bool:
    if b is ANY_K:
        return True
    return a is not ANY_K and b % a == 0


@dataclass(frozen=True)
class Knowledge:
    status: Status
    lo: BasisType = BOTTOM
    hi_n: UpperN = INFINITY
    hi_k: UpperK = ANY_K

    def __post_init__(self) -> None:
        if self.status is Status.KNOWN_IBN:
            # bounds carry no meaning for IBN algebras; keep one canonical value
            object.__setattr__(self, "lo", BOTTOM)
            object.__setattr__(self, "hi_n", INFINITY)
            object.__setattr__(self, "hi_k", ANY_K)
            return
        for name, top in (("hi_n", INFINITY), ("hi_k", ANY_K)):
            v = getattr(self, name)
            if v is not top and (isinstance(v, Sentinel) or not isinstance(v, int) or v < 1):
                raise ValueError(f"{name} must be a positive integer or {top.value}, got {v!r}")
        if not _le_n(self.lo.n_min, self.hi_n):
            raise ValueError(f"lower N {self.lo.n_min} exceeds upper N {self.hi_n}")
        if not _divides_k(self.lo.k_period, self.hi_k):
            raise ValueError(f"lower K {self.lo.k_period} does not divide upper K {self.hi_k}")

    # constructors
    @classmethod
    def ibn(cls) -> "Knowledge":
        return cls(Status.KNOWN_IBN)

    @classmethod
    def exact(cls, t: BasisType) -> "Knowledge":
        return cls(Status.KNOWN_NON_IBN, t, t.n_min, t.k_period)

    @classmethod
    def non_ibn(cls, lo: BasisType = BOTTOM, hi_n: UpperN = INFINITY, hi_k: UpperK = ANY_K) -> "Knowledge":
        return cls(Status.KNOWN_NON_IBN, lo, hi_n, hi_k)

    @classmethod
    def unknown(cls, lo: BasisType = BOTTOM, hi_n: UpperN = INFINITY, hi_k: UpperK = ANY_K) -> "Knowledge":
        return cls(Status.UNKNOWN, lo, hi_n, hi_k)

    @property
    def exact_type(self) -> BasisType | None:
        return normalize_exact(self)

    @property
    def is_ibn(self) -> bool:
        return self.status is Status.KNOWN_IBN

    @property
    def is_non_ibn(self) -> bool:
        return self.status is Status.KNOWN_NON_IBN

    def contains(self, t: BasisType) -> bool:
        """Whether ``t`` lies in the interval ``[lo, hi]``."""
        return leq(self.lo, t) and _le_n(t.n_min, self.hi_n) and _divides_k(t.k_period, self.hi_k)

    def interval_within(self, other: "Knowledge") -> bool:
        """Whether this interval is contained in ``other``'s interval."""
        return (
            leq(other.lo, self.lo)
            and _le_n(self.hi_n, other.hi_n)
            and _divides_k(self.hi_k, other.hi_k)
        )

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        exact = normalize_exact(self)
        out["exact"] = exact.to_json() if exact else None
        if self.status is Status.KNOWN_IBN:
            out["lo"] = None
            out["hi"] = None
        else:
            out["lo"] = self.lo.to_json()
            out["hi"] = {
                "N": self.hi_n.value if isinstance(self.hi_n, Sentinel) else self.hi_n,
                "K": self.hi_k.value if isinstance(self.hi_k, Sentinel) else self.hi_k,
            }
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Knowledge":
        status = Status(data["status"])
        if status is Status.KNOWN_IBN:
            return cls.ibn()
        if data.get("exact"):
            exact = BasisType.from_json(data["exact"])
            if status is Status.KNOWN_NON_IBN and not data.get("lo"):
                return cls.exact(exact)
        lo = BasisType.from_json(data["lo"]) if data.get("lo") else BOTTOM
        hi = data.get("hi") or {}
        hi_n = hi.get("N", INFINITY.value)
        hi_k = hi.get("K", ANY_K.value)
        hi_n = INFINITY if hi_n == INFINITY.value else int(hi_n)
        hi_k = ANY_K if hi_k == ANY_K.value else int(hi_k)
        return cls(status, lo, hi_n, hi_k)

    def __str__(self) -> str:
        if self.status is Status.KNOWN_IBN:
            return "IBN"
        exact = normalize_exact(self)
        if exact is not None:
            return f"NonIBN, exact type {exact}"
        hi_n = self.hi_n.value if isinstance(self.hi_n, Sentinel) else self.hi_n
        hi_k = self.hi_k.value if isinstance(self.hi_k, Sentinel) else self.hi_k
        return f"{self.status.value}, {self.lo} <= type <= ({hi_n},{hi_k})"


def normalize_exact(k: Knowledge) -> BasisType | None:
    """The Basis Type pinned by ``k``, or ``None`` when ``k`` is not exact."""
    if k.status is not Status.KNOWN_NON_IBN:
        return None
    if k.hi_n is INFINITY or k.hi_k is ANY_K:
        return None
    if k.lo.n_min == k.hi_n and k.lo.k_period == k.hi_k:
        return k.lo
    return None


# ---------------------------------------------------------------------------
# expression tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    catalog_id: str


@dataclass(frozen=True)
class ExactLeaf:
    type: BasisType


@dataclass(frozen=True)
class IbnLeaf:
    pass


@dataclass(frozen=True)
class DirectSum:
    left: "AlgebraExpr"
    right: "AlgebraExpr"


@dataclass(frozen=True)
class Tensor:
    left: "AlgebraExpr"
    right: "AlgebraExpr"


@dataclass(frozen=True)
class Quotient:
    inner: "AlgebraExpr"


@dataclass(frozen=True)
class HomImage:
    """Target of a unital *-homomorphism out of ``inner``."""

    inner: "AlgebraExpr"


@dataclass(frozen=True)
class ExtensionOf:
    """A unital extension whose quotient is ``quotient_target``."""

    quotient_target: "AlgebraExpr"


@dataclass(frozen=True)
class CornerOfInfiniteSimple:
    """The full corner ``(1 - vv*) A (1 - vv*)`` of an infinite simple algebra."""


@dataclass(frozen=True)
class InductiveLimit:
    """Direct limit along unital connecting maps, listed in system order."""

    parts: tuple["AlgebraExpr", ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("an inductive limit needs at least one algebra")


AlgebraExpr = Union[
    Leaf,
    ExactLeaf,
    IbnLeaf,
    DirectSum,
    Tensor,
    Quotient,
    HomImage,
    ExtensionOf,
    CornerOfInfiniteSimple,
    InductiveLimit,
]

_TRIVIAL_UNKNOWN = Knowledge.unknown()


def _leaf_knowledge(catalog, catalog_id: str) -> Knowledge:
    if isinstance(catalog, Mapping):
        try:
            return catalog[catalog_id]
        except KeyError:
            raise UnknownCatalogId(f"unknown catalog id {catalog_id!r}") from None
    try:
        return catalog.lookup(catalog_id).knowledge
    except UnknownCatalogId:
        raise
    except KeyError:
        raise UnknownCatalogId(f"unknown catalog id {catalog_id!r}") from None


def _meet_uppers(ks) -> tuple[UpperN, UpperK]:
    hi_n: UpperN = INFINITY
    hi_k: UpperK = ANY_K
    for k in ks:
        hi_n = _meet_n(hi_n, k.hi_n)
        hi_k = _meet_k(hi_k, k.hi_k)
    return hi_n, hi_k


def infer(e: AlgebraExpr, catalog=None) -> Knowledge:
    """Knowledge about the algebra denoted by ``e``.

    ``catalog`` is a :class:`~basistype.catalog.Catalog` or any mapping from
    catalog id to :class:`Knowledge`; the shipped catalog by default.
    """
    if catalog is None:
        from .catalog import default_catalog

        catalog = default_catalog()
    return _infer(e, catalog)


def _infer(e: AlgebraExpr, catalog) -> Knowledge:
    if isinstance(e, Leaf):
        return _leaf_knowledge(catalog, e.catalog_id)
    if isinstance(e, ExactLeaf):
        return Knowledge.exact(e.type)
    if isinstance(e, IbnLeaf):
        return Knowledge.ibn()

    if isinstance(e, DirectSum):
        a, b = _infer(e.left, catalog), _infer(e.right, catalog)
        if a.is_ibn or b.is_ibn:
            return Knowledge.ibn()
        lo = join(a.lo, b.lo)
        if a.is_non_ibn and b.is_non_ibn:
            return Knowledge.non_ibn(lo, _join_n(a.hi_n, b.hi_n), _join_k(a.hi_k, b.hi_k))
        return Knowledge.unknown(lo)

    if isinstance(e, Tensor):
        sides = [_infer(e.left, catalog), _infer(e.right, catalog)]
        non_ibn = [k for k in sides if k.is_non_ibn]
        if non_ibn:
            return Knowledge.non_ibn(BOTTOM, *_meet_uppers(non_ibn))
        return _TRIVIAL_UNKNOWN

    if isinstance(e, (Quotient, HomImage)):
        inner = _infer(e.inner, catalog)
        if inner.is_non_ibn:
            return Knowledge.non_ibn(BOTTOM, inner.hi_n, inner.hi_k)
        return _TRIVIAL_UNKNOWN

    if isinstance(e, ExtensionOf):
        q = _infer(e.quotient_target, catalog)
        if q.is_ibn:
            return Knowledge.ibn()
        if q.is_non_ibn:
            return Knowledge.unknown(q.lo)
        return _TRIVIAL_UNKNOWN

    if isinstance(e, CornerOfInfiniteSimple):
        return Knowledge.non_ibn(BOTTOM, INFINITY, 1)

    if isinstance(e, InductiveLimit):
        parts = [_infer(p, catalog) for p in e.parts]
        if all(k.is_ibn for k in parts):
            return Knowledge.ibn()
        non_ibn = [k for k in parts if k.is_non_ibn]
        if non_ibn:
            return Knowledge.non_ibn(BOTTOM, *_meet_uppers(non_ibn))
        return _TRIVIAL_UNKNOWN

    raise TypeError(f"not an algebra expression: {e!r}")


# ---------------------------------------------------------------------------
# deciding equivalence from knowledge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    """Outcome of :func:`decide_equiv`; ``equivalent`` is ``None`` when undecided."""

    equivalent: bool | None
    reason: str
    blocking: str | None = None


def decide_equiv(k: Knowledge, n: int, m: int) -> Decision:
    """Decide ``A^n ≃ A^m`` from knowledge about ``A``, using bounds when the type is not exact.

    Lower bounds can only refute (they also hold vacuously when ``A`` has
    IBN); upper bounds can only confirm, and only for known non-IBN algebras.
    """
    n, m = _rank(n), _rank(m)
    if n == m:
        return Decision(True, "equal ranks")
    if k.is_ibn:
        return Decision(False, "the algebra has IBN")
    exact = normalize_exact(k)
    if exact is not None:
        return Decision(equiv_ranks(exact, n, m), f"exact Basis Type {exact}")
    low, diff = min(n, m), abs(n - m)
    if low < k.lo.n_min:
        return Decision(False, f"rank {low} is below the lower bound N >= {k.lo.n_min}")
    if diff % k.lo.k_period:
        return Decision(False, f"difference {diff} is not a multiple of the lower bound K, a multiple of {k.lo.k_period}")
    if k.status is Status.UNKNOWN:
        return Decision(None, "IBN status unknown", "status")
    if k.hi_n is INFINITY or low < k.hi_n:
        bound = "unbounded" if k.hi_n is INFINITY else f"<= {k.hi_n}"
        return Decision(None, f"rank {low} may lie below N (N >= {k.lo.n_min}, N {bound})", "hi_n")
    if k.hi_k is ANY_K or diff % k.hi_k:
        bound = "unbounded" if k.hi_k is ANY_K else f"divides {k.hi_k}"
        return Decision(None, f"difference {diff} may not be a multiple of K (K {bound})", "hi_k")
    return Decision(True, f"N <= {k.hi_n} <= {low} and K divides {k.hi_k}, which divides {diff}")
