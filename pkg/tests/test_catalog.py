import json

import pytest

from basistype.calculus import Knowledge, Status
from basistype.catalog import (
    Catalog,
    CatalogEntry,
    Provenance,
    Tri,
    UnitOrder,
    default_catalog,
    load_catalog,
    lookup,
    validate,
)
from basistype.errors import CatalogValidationError, NotFound, UnknownCatalogId
from basistype.matrices import Verdict, verify_unitary, witness
from basistype.presentation import get_presentation
from basistype.ranks import BasisType as T


def _entry(**kw):
    base = dict(
        id="X",
        display_name="X",
        k0_unit_order=2,
        ibn=False,
        ibn1=Tri.NO,
        ibn2_stably_finite=Tri.NO,
        knowledge=Knowledge.exact(T(1, 2)),
        provenance=Provenance.USER,
    )
    base.update(kw)
    return CatalogEntry(**base)


def test_shipped_catalog_is_valid():
    assert validate() == []
    assert default_catalog().validate() == []


def test_lookup_examples():
    o3 = lookup("O:3")
    assert o3.knowledge.exact_type == T(1, 2) and o3.k0_unit_order == 2
    assert o3.presentation_id == "cuntz:3"
    oinf = lookup("Oinf")
    assert oinf.ibn and oinf.k0_unit_order is UnitOrder.INFINITE
    assert oinf.ibn1 is Tri.NO and oinf.ibn2_stably_finite is Tri.NO
    with pytest.raises(NotFound):
        lookup("nonexistent")


@pytest.mark.parametrize(
    "cid,exact",
    [("O:2", (1, 1)), ("O:12", (1, 11)), ("BH", (1, 1)), ("Unc:2,5", (2, 3)), ("Unc:3,6", (3, 3)), ("Rordam:4", (4, 1))],
)
def test_exact_types(cid, exact):
    assert lookup(cid).knowledge.exact_type == T(*exact)


@pytest.mark.parametrize("cid", ["Commutative", "StablyFinite", "Oinf", "Toeplitz", "T2"])
def test_ibn_entries(cid):
    e = lookup(cid)
    assert e.ibn and e.knowledge.status is Status.KNOWN_IBN and e.k0_unit_order is UnitOrder.INFINITE


def test_flags_of_named_entries():
    assert lookup("Toeplitz").ibn1 is Tri.UNKNOWN
    assert lookup("Toeplitz").ibn2_stably_finite is Tri.NO
    assert lookup("T2").ibn1 is Tri.NO and lookup("T2").presentation_id == "toeplitz2"
    assert lookup("Commutative").ibn2_stably_finite is Tri.YES
    assert lookup("StablyFinite").ibn2_stably_finite is Tri.YES


def test_beyond_citation_facts_are_flagged():
    assert lookup("Commutative").provenance is Provenance.STANDARD_FACT
    assert lookup("Oinf").provenance is Provenance.DERIVED
    assert lookup("O:3").provenance is Provenance.CITED


@pytest.mark.parametrize("bad", ["O:1", "O:0", "Unc:3,3", "Unc:5,2", "Rordam:0", "O:03", "o:3"])
def test_malformed_family_ids(bad):
    with pytest.raises(UnknownCatalogId):
        lookup(bad)


def test_list_is_deterministic_and_valid():
    ids = [e.id for e in default_catalog().list()]
    assert ids == [e.id for e in Catalog().list()]
    assert len(ids) == len(set(ids))
    assert {"Commutative", "Oinf", "BH", "T2", "O:3", "Unc:2,5", "Unc:3,6"} <= set(ids)


def test_unit_order_does_not_separate_but_type_does():
    a, b = lookup("Unc:2,5"), lookup("Unc:3,6")
    assert a.k0_unit_order == b.k0_unit_order == 3
    assert a.knowledge.exact_type != b.knowledge.exact_type


def test_unc_types_distinct():
    types = {}
    for m in range(1, 8):
        for n in range(m + 1, 12):
            types[(m, n)] = lookup(f"Unc:{m},{n}").knowledge.exact_type
    assert len(set(types.values())) == len(types)


def test_entries_with_presentation_admit_witnesses():
    for e in default_catalog().list():
        t = e.knowledge.exact_type
        if e.presentation_id is None or t is None:
            continue
        u = witness(e.presentation_id, t.n_min, t.n_min + t.k_period)
        assert verify_unitary(u, get_presentation(e.presentation_id)) is Verdict.VERIFIED, e.id


def test_large_cuntz_index_has_no_presentation():
    assert lookup("O:10").presentation_id is None
    assert validate(lookup("O:10")) == []


# --- validator ---------------------------------------------------------------


def test_hierarchy_violation():
    e = _entry(ibn2_stably_finite=Tri.YES)
    assert "hierarchy" in {v.rule for v in validate(e)}


def test_period_violation():
    e = _entry(k0_unit_order=3)
    rules = {v.rule for v in validate(e)}
    assert "period" in rules


def test_unit_order_violation():
    e = _entry(ibn=True, knowledge=Knowledge.ibn())
    assert {v.rule for v in validate(e)} == {"unit-order"}


def test_knowledge_violation():
    e = _entry(knowledge=Knowledge.unknown(), k0_unit_order=UnitOrder.UNKNOWN)
    assert {v.rule for v in validate(e)} == {"knowledge"}


def test_violation_names_anchor():
    violations = validate(_entry(k0_unit_order=3))
    assert {v.rule for v in violations} == {"period", "knowledge"}
    v = next(v for v in violations if v.rule == "period")
    assert v.entry_id == "X" and v.anchor and "3" in v.message


# --- user extensions -------------------------------------------------------------


def test_entry_json_round_trip():
    for e in default_catalog().list():
        assert CatalogEntry.from_json(e.to_json()) == e


def test_user_catalog_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"entries": [_entry(id="Mine").to_json()]}))
    cat = load_catalog(path)
    assert cat.lookup("Mine").knowledge.exact_type == T(1, 2)
    assert "O:3" in cat and "Mine" not in default_catalog()
    assert [e.id for e in cat.list()][-1] == "Mine"


def test_user_entries_must_validate(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"entries": [_entry(id="Mine", k0_unit_order=5).to_json()]}))
    with pytest.raises(CatalogValidationError):
        load_catalog(path)


def test_user_entries_cannot_shadow_shipped_ids():
    with pytest.raises(CatalogValidationError):
        default_catalog().with_entries([_entry(id="O:3")])
    with pytest.raises(CatalogValidationError):
        default_catalog().with_entries([_entry(id="BH")])
