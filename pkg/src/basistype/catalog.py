"""Registry of named C*-algebras and their K-theoretic / IBN ground truth.

Entries carry the order of ``[1]`` in K_0, the IBN / IBN_1 / IBN_2 flags,
Basis Type knowledge and an optional presentation id. ``validate`` checks
the cross-cutting consistency rules:

* hierarchy: IBN_2 implies IBN_1 implies IBN;
* unit order: IBN iff ``[1]`` has infinite order in K_0;
* period: an exact type ``(N, K)`` forces non-IBN and ``K == |[1]|``;
* knowledge: the stored Knowledge agrees with the IBN flag and unit order.

Parametric families (``O:n``, ``Unc:m,n``, ``Rordam:N``) are built on
demand from the id string.
"""

from __future__ import annotations

import enum
import functools
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

from .calculus import ANY_K, Knowledge, Status, normalize_exact
from .errors import CatalogValidationError, UnknownCatalogId
from .ranks import BasisType


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class UnitOrder(enum.Enum):
    INFINITE = "Infinite"
    UNKNOWN = "Unknown"


K0Order = Union[int, UnitOrder]


class Provenance(enum.Enum):
    CITED = "cited"  # published result about this algebra
    STANDARD_FACT = "standard-fact"  # textbook fact outside the cited results
    DERIVED = "derived"  # short argument from cited facts
    USER = "user"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    display_name: str
    k0_unit_order: K0Order
    ibn: bool
    ibn1: Tri
    ibn2_stably_finite: Tri
    knowledge: Knowledge
    presentation_id: str | None = None
    provenance_note: str = ""
    provenance: Provenance = Provenance.CITED

    def to_json(self) -> dict:
        order = self.k0_unit_order
        return {
            "id": self.id,
            "display_name": self.display_name,
            "k0_unit_order": order.value if isinstance(order, UnitOrder) else order,
            "ibn": "yes" if self.ibn else "no",
            "ibn1": self.ibn1.value,
            "ibn2_stably_finite": self.ibn2_stably_finite.value,
            "knowledge": self.knowledge.to_json(),
            "presentation_id": self.presentation_id,
            "provenance": self.provenance.value,
            "provenance_note": self.provenance_note,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CatalogEntry":
        order = data["k0_unit_order"]
        if isinstance(order, str):
            order = UnitOrder(order)
        ibn = data["ibn"]
        if isinstance(ibn, str):
            ibn = {"yes": True, "no": False}[ibn]
        return cls(
            id=data["id"],
            display_name=data.get("display_name", data["id"]),
            k0_unit_order=order,
            ibn=bool(ibn),
            ibn1=Tri(data.get("ibn1", "unknown")),
            ibn2_stably_finite=Tri(data.get("ibn2_stably_finite", "unknown")),
            knowledge=Knowledge.from_json(data["knowledge"]),
            presentation_id=data.get("presentation_id"),
            provenance_note=data.get("provenance_note", ""),
            provenance=Provenance(data.get("provenance", "user")),
        )


@dataclass(frozen=True)
class Violation:
    entry_id: str
    rule: str
    anchor: str
    message: str

    def to_json(self) -> dict:
        return {"entry": self.entry_id, "rule": self.rule, "anchor": self.anchor, "message": self.message}

    def __str__(self) -> str:
        return f"{self.entry_id}: [{self.rule}] {self.message} ({self.anchor})"


HIERARCHY = "hierarchy"
UNIT_ORDER = "unit-order"
PERIOD = "period"
KNOWLEDGE = "knowledge"

_ANCHORS = {
    HIERARCHY: "IBN_2 => IBN_1 => IBN",
    UNIT_ORDER: "IBN iff [1] has infinite order in K_0",
    PERIOD: "type (N,K) => |[1]| in K_0 equals K",
    KNOWLEDGE: "Knowledge must agree with the IBN flag and K_0 unit order",
}


def validate_entry(entry: CatalogEntry) -> list[Violation]:
    out: list[Violation] = []

    def bad(rule: str, message: str) -> None:
        out.append(Violation(entry.id, rule, _ANCHORS[rule], message))

    if entry.ibn2_stably_finite is Tri.YES and entry.ibn1 is not Tri.YES:
        bad(HIERARCHY, f"IBN_2 holds but IBN_1 is {entry.ibn1.value}")
    if entry.ibn1 is Tri.YES and not entry.ibn:
        bad(HIERARCHY, "IBN_1 holds but IBN does not")
    if entry.ibn2_stably_finite is Tri.YES and not entry.ibn:
        bad(HIERARCHY, "IBN_2 (stable finiteness) holds but IBN does not")

    order = entry.k0_unit_order
    if isinstance(order, int) and order < 1:
        bad(UNIT_ORDER, f"unit order must be positive, got {order}")
    if entry.ibn and isinstance(order, int):
        bad(UNIT_ORDER, f"IBN but [1] has finite order {order}")
    if not entry.ibn and order is UnitOrder.INFINITE:
        bad(UNIT_ORDER, "no IBN but [1] has infinite order")

    exact = normalize_exact(entry.knowledge)
    if exact is not None:
        if entry.ibn:
            bad(PERIOD, f"exact type {exact} recorded for an algebra marked IBN")
        if order != exact.k_period:
            shown = order.value if isinstance(order, UnitOrder) else order
            bad(PERIOD, f"exact type {exact} needs unit order {exact.k_period}, found {shown}")

    k = entry.knowledge
    if entry.ibn and k.status is not Status.KNOWN_IBN:
        bad(KNOWLEDGE, f"IBN algebra with knowledge status {k.status.value}")
    if not entry.ibn and k.status is not Status.KNOWN_NON_IBN:
        bad(KNOWLEDGE, f"non-IBN algebra with knowledge status {k.status.value}")
    if not entry.ibn and isinstance(order, int) and order >= 1:
        if order % k.lo.k_period != 0 or (k.hi_k is not ANY_K and k.hi_k % order != 0):
            bad(KNOWLEDGE, f"unit order {order} lies outside the K bounds [{k.lo.k_period}, {k.hi_k}]")
    return out


# ---------------------------------------------------------------------------
# shipped entries
# ---------------------------------------------------------------------------

_NON_IBN_FLAGS = dict(ibn=False, ibn1=Tri.NO, ibn2_stably_finite=Tri.NO)


def _fixed_entries() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            "Commutative",
            "commutative unital C*-algebra",
            UnitOrder.INFINITE,
            True,
            Tri.YES,
            Tri.YES,
            Knowledge.ibn(),
            provenance=Provenance.STANDARD_FACT,
            provenance_note=(
                "IBN: matrices over a commutative algebra are invertible only when square. "
                "Stable finiteness of commutative unital algebras: standard fact."
            ),
        ),
        CatalogEntry(
            "StablyFinite",
            "stably finite C*-algebra",
            UnitOrder.INFINITE,
            True,
            Tri.YES,
            Tri.YES,
            Knowledge.ibn(),
            provenance_note="stably finite algebras have IBN; IBN_2 is equivalent to stable finiteness",
        ),
        CatalogEntry(
            "Oinf",
            "Cuntz algebra O_inf",
            UnitOrder.INFINITE,
            True,
            Tri.NO,
            Tri.NO,
            Knowledge.ibn(),
            provenance=Provenance.DERIVED,
            provenance_note=(
                "K_0(O_inf) = Z generated by [1], so IBN; contains proper isometries, so not stably finite. "
                "IBN_1 fails: v1, v2 satisfy the toeplitz2 relations, as for T2 (derived)."
            ),
        ),
        CatalogEntry(
            "Toeplitz",
            "Toeplitz algebra T",
            UnitOrder.INFINITE,
            True,
            Tri.UNKNOWN,
            Tri.NO,
            Knowledge.ibn(),
            provenance_note=(
                "extension of C(T) by the compacts, hence IBN; generated by a non-unitary isometry, "
                "so not stably finite. IBN_1 status left open."
            ),
        ),
        CatalogEntry(
            "BH",
            "B(H), H infinite dimensional",
            1,
            knowledge=Knowledge.exact(BasisType(1, 1)),
            provenance_note="K_0(B(H)) = 0, Basis Type (1,1)",
            **_NON_IBN_FLAGS,
        ),
        CatalogEntry(
            "T2",
            "T_2: two isometries with orthogonal ranges, v1v1* + v2v2* < 1",
            UnitOrder.INFINITE,
            True,
            Tri.NO,
            Tri.NO,
            Knowledge.ibn(),
            presentation_id="toeplitz2",
            provenance_note="K_0(T_2) = Z generated by [1], so IBN; [v1 v2] is a proper isometry, so no IBN_1",
        ),
    ]
    return {e.id: e for e in entries}


def _cuntz_entry(n: int) -> CatalogEntry:
    k = n - 1
    return CatalogEntry(
        f"O:{n}",
        f"Cuntz algebra O_{n}",
        k,
        knowledge=Knowledge.exact(BasisType(1, k)),
        presentation_id=f"cuntz:{n}" if n <= 9 else None,
        provenance_note=f"K_0(O_n) = Z/(n-1)Z generated by [1]; type (1,{k})",
        **_NON_IBN_FLAGS,
    )


def _unc_entry(m: int, n: int) -> CatalogEntry:
    return CatalogEntry(
        f"Unc:{m},{n}",
        f"U^nc_{{{m},{n}}}",
        n - m,
        knowledge=Knowledge.exact(BasisType(m, n - m)),
        presentation_id=f"unc:{m},{n}",
        provenance_note=f"K_0(U^nc_(m,n)) = Z/(n-m)Z generated by [1]; type (m, n-m) = ({m},{n - m})",
        **_NON_IBN_FLAGS,
    )


def _rordam_entry(n: int) -> CatalogEntry:
    return CatalogEntry(
        f"Rordam:{n}",
        f"Rordam algebra with Basis Type ({n},1)",
        1,
        knowledge=Knowledge.exact(BasisType(n, 1)),
        provenance_note="M_k(A) finite for k < N, properly infinite for k >= N, K_0(A) = 0; type (N,1)",
        **_NON_IBN_FLAGS,
    )


_FAMILY_RE = re.compile(r"^(?:O:([1-9][0-9]*)|Unc:([1-9][0-9]*),([1-9][0-9]*)|Rordam:([1-9][0-9]*))$")


def _family_entry(entry_id: str) -> CatalogEntry | None:
    m = _FAMILY_RE.match(entry_id)
    if m is None:
        return None
    if m.group(1):
        n = int(m.group(1))
        return _cuntz_entry(n) if n >= 2 else None
    if m.group(2):
        a, b = int(m.group(2)), int(m.group(3))
        return _unc_entry(a, b) if b > a else None
    return _rordam_entry(int(m.group(4)))


# representative family members listed by list()
_SAMPLE_FAMILY_IDS = (
    "O:2",
    "O:3",
    "O:4",
    "O:5",
    "Unc:1,2",
    "Unc:1,3",
    "Unc:2,3",
    "Unc:2,5",
    "Unc:3,6",
    "Unc:3,7",
    "Rordam:1",
    "Rordam:2",
    "Rordam:3",
)


class Catalog:
    """Immutable registry; ``extra`` entries extend the shipped set."""

    def __init__(self, extra: dict[str, CatalogEntry] | None = None):
        self._fixed = _fixed_entries()
        self._extra = dict(extra or {})

    def lookup(self, entry_id: str) -> CatalogEntry:
        if entry_id in self._fixed:
            return self._fixed[entry_id]
        if entry_id in self._extra:
            return self._extra[entry_id]
        entry = _family_entry(entry_id)
        if entry is None:
            raise UnknownCatalogId(f"no catalog entry {entry_id!r}")
        return entry

    def __contains__(self, entry_id: str) -> bool:
        try:
            self.lookup(entry_id)
        except UnknownCatalogId:
            return False
        return True

    def list(self) -> list[CatalogEntry]:
        ids = list(self._fixed) + list(_SAMPLE_FAMILY_IDS) + sorted(self._extra)
        return [self.lookup(i) for i in ids]

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.list())

    def validate(self) -> list[Violation]:
        out: list[Violation] = []
        for entry in self.list():
            out.extend(validate_entry(entry))
        return out

    def with_entries(self, entries: list[CatalogEntry]) -> "Catalog":
        """A new catalog extended by ``entries``; each must validate and must not shadow a shipped id."""
        extra = dict(self._extra)
        problems: list[str] = []
        for entry in entries:
            if entry.id in self._fixed or _family_entry(entry.id) is not None:
                problems.append(f"{entry.id}: id clashes with a shipped entry")
                continue
            problems.extend(str(v) for v in validate_entry(entry))
            extra[entry.id] = entry
        if problems:
            raise CatalogValidationError("; ".join(problems))
        return Catalog(extra)

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.list()]}


@functools.lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return Catalog()


def load_catalog(path: str | Path, base: Catalog | None = None) -> Catalog:
    """Extend ``base`` (the shipped catalog by default) with entries from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    raw = data["entries"] if isinstance(data, dict) else data
    entries = [CatalogEntry.from_json(item) for item in raw]
    return (base or default_catalog()).with_entries(entries)


def lookup(entry_id: str) -> CatalogEntry:
    return default_catalog().lookup(entry_id)


def validate(target: Catalog | CatalogEntry | None = None) -> list[Violation]:
    """Violations of an entry or a whole catalog (the shipped one by default)."""
    if isinstance(target, CatalogEntry):
        return validate_entry(target)
    return (target or default_catalog()).validate()


__all__ = [
    "Catalog",
    "CatalogEntry",
    "Provenance",
    "Tri",
    "UnitOrder",
    "Violation",
    "default_catalog",
    "load_catalog",
    "lookup",
    "validate",
    "validate_entry",
]
