"""Basis Type calculus for unital C*-algebras.

Decides equivalence of standard Hilbert-module ranks from a Basis Type
``(N, K)``, computes in the Basis Type lattice, propagates type knowledge
through algebra constructions, and builds/verifies rectangular unitary
matrices over finitely presented *-algebras.
"""

from .calculus import (
    ANY_K,
    INFINITY,
    AlgebraExpr,
    CornerOfInfiniteSimple,
    DirectSum,
    ExactLeaf,
    ExtensionOf,
    HomImage,
    IbnLeaf,
    InductiveLimit,
    Knowledge,
    Leaf,
    Quotient,
    Status,
    Tensor,
    decide_equiv,
    infer,
    normalize_exact,
)
from .catalog import Catalog, CatalogEntry, default_catalog, load_catalog, lookup, validate
from .dsl import parse, to_dsl
from .lattice import BOTTOM, TOP, ext_join, ext_leq, ext_meet, join, leq, meet
from .matrices import (
    AMatrix,
    Properness,
    Verdict,
    delete_column,
    verify_isometry,
    verify_unitary,
    witness,
)
from .ncpoly import Letter, NCPoly, involute, parse_poly
from .presentation import Presentation, cuntz, get_presentation, normalize, toeplitz2, unc
from .ranks import (
    BasisType,
    EquivalenceWitnessSet,
    canonical_rank,
    class_count,
    derive_type,
    equiv_ranks,
    oracle_closure,
)

__version__ = "0.1.0"

__all__ = [
    "ANY_K",
    "AMatrix",
    "AlgebraExpr",
    "BOTTOM",
    "BasisType",
    "Catalog",
    "CatalogEntry",
    "CornerOfInfiniteSimple",
    "DirectSum",
    "EquivalenceWitnessSet",
    "ExactLeaf",
    "ExtensionOf",
    "HomImage",
    "INFINITY",
    "IbnLeaf",
    "InductiveLimit",
    "Knowledge",
    "Leaf",
    "Letter",
    "NCPoly",
    "Presentation",
    "Properness",
    "Quotient",
    "Status",
    "TOP",
    "Tensor",
    "Verdict",
    "canonical_rank",
    "class_count",
    "cuntz",
    "decide_equiv",
    "default_catalog",
    "delete_column",
    "derive_type",
    "equiv_ranks",
    "ext_join",
    "ext_leq",
    "ext_meet",
    "get_presentation",
    "infer",
    "involute",
    "join",
    "leq",
    "load_catalog",
    "lookup",
    "meet",
    "normalize",
    "normalize_exact",
    "oracle_closure",
    "parse",
    "parse_poly",
    "to_dsl",
    "toeplitz2",
    "unc",
    "validate",
    "verify_isometry",
    "verify_unitary",
    "witness",
]
