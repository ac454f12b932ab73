"""Matrices over presented *-algebras and rectangular unitary witnesses."""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import IndexOutOfRange, Inconclusive, NotEquivalent
from .ncpoly import Letter, NCPoly, format_poly, involute, parse_poly
from .presentation import DEFAULT_STEP_BOUND, Presentation, get_presentation, normalize
from .ranks import BasisType, equiv_ranks


class Verdict(enum.Enum):
    VERIFIED = "Verified"
    INCONCLUSIVE = "Inconclusive"


class Properness(enum.Enum):
    SYNTACTICALLY_PROPER = "SyntacticallyProper"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class AMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[NCPoly, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix shape must be at least 1x1, got {self.rows}x{self.cols}")
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[NCPoly | str | int]]) -> "AMatrix":
        def coerce(x):
            if isinstance(x, NCPoly):
                return x
            if isinstance(x, str):
                return parse_poly(x)
            return NCPoly.scalar(x)

        grid = tuple(tuple(coerce(x) for x in row) for row in rows)
        return cls(len(grid), len(grid[0]) if grid else 0, grid)

    @classmethod
    def identity(cls, n: int) -> "AMatrix":
        one, zero = NCPoly.one(), NCPoly.zero()
        return cls(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> NCPoly:
        i, j = ij
        return self.entries[i][j]

    def adjoint(self) -> "AMatrix":
        return AMatrix(
            self.cols,
            self.rows,
            tuple(tuple(involute(self.entries[i][j]) for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "AMatrix") -> "AMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = NCPoly.zero()
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return AMatrix(self.rows, other.cols, tuple(out))

    def __sub__(self, other: "AMatrix") -> "AMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return AMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = object.__hash__

    def block_identity(self, k: int) -> "AMatrix":
        """``I_k ⊕ self`` with the identity block in the top-left corner."""
        if k == 0:
            return self
        zero, one = NCPoly.zero(), NCPoly.one()
        rows = []
        for i in range(k):
            rows.append(tuple(one if j == i else zero for j in range(k + self.cols)))
        for row in self.entries:
            rows.append((zero,) * k + row)
        return AMatrix(k + self.rows, k + self.cols, tuple(rows))

    def map_entries(self, f) -> "AMatrix":
        return AMatrix(self.rows, self.cols, tuple(tuple(f(x) for x in row) for row in self.entries))

    def __str__(self) -> str:
        cells = [[format_poly(x) for x in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.ljust(width) for c in row) + " ]" for row in cells)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Defect:
    product: str  # "UU*", "U*U", "VV*" or "V*V"
    row: int
    col: int
    residual: str  # normal form of (product - identity) at (row, col), or a budget note


def _residual_defects(product: AMatrix, label: str, pres: Presentation, step_bound: int) -> list[Defect]:
    defects = []
    ident = AMatrix.identity(product.rows)
    for i in range(product.rows):
        for j in range(product.cols):
            entry = product.entries[i][j] - ident.entries[i][j]
            try:
                nf = normalize(entry, pres, step_bound)
            except Inconclusive as exc:
                defects.append(Defect(label, i + 1, j + 1, exc.message))
                continue
            if not nf.is_zero():
                defects.append(Defect(label, i + 1, j + 1, format_poly(nf)))
    return defects


def unitary_defects(u: AMatrix, pres: Presentation, step_bound: int = DEFAULT_STEP_BOUND) -> list[Defect]:
    """Entries of ``UU* - I`` and ``U*U - I`` that did not rewrite to zero."""
    ustar = u.adjoint()
    return _residual_defects(u @ ustar, "UU*", pres, step_bound) + _residual_defects(
        ustar @ u, "U*U", pres, step_bound
    )


def verify_unitary(u: AMatrix, pres: Presentation, step_bound: int = DEFAULT_STEP_BOUND) -> Verdict:
    """``VERIFIED`` iff both ``UU* - I`` and ``U*U - I`` rewrite to zero entrywise.

    Never a disproof: a failed rewrite only means the rules did not find the identity.
    """
    return Verdict.INCONCLUSIVE if unitary_defects(u, pres, step_bound) else Verdict.VERIFIED


def delete_column(u: AMatrix, j: int) -> AMatrix:
    """Remove column ``j`` (1-based)."""
    if u.cols < 2:
        raise IndexOutOfRange(f"cannot delete a column from a {u.rows}x{u.cols} matrix")
    if not 1 <= j <= u.cols:
        raise IndexOutOfRange(f"column {j} is outside 1..{u.cols}")
    return AMatrix(u.rows, u.cols - 1, tuple(row[: j - 1] + row[j:] for row in u.entries))


@dataclass(frozen=True)
class IsometryReport:
    verdict: Verdict
    properness: Properness
    range_residuals: tuple[Defect, ...] = ()

    @property
    def isometry_verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def to_json(self) -> dict:
        return {
            "isometry": "IsometryVerified" if self.isometry_verified else Verdict.INCONCLUSIVE.value,
            "properness": self.properness.value,
            "caveat": "a nonzero normal form is not a proof that VV* differs from I in the algebra",
        }


def verify_isometry(v: AMatrix, pres: Presentation, step_bound: int = DEFAULT_STEP_BOUND) -> IsometryReport:
    """Check ``V*V = I`` and report whether ``VV* - I`` keeps a nonzero normal form."""
    vstar = v.adjoint()
    iso = _residual_defects(vstar @ v, "V*V", pres, step_bound)
    verdict = Verdict.INCONCLUSIVE if iso else Verdict.VERIFIED
    rng = vstar.adjoint() @ vstar  # V V*
    ident = AMatrix.identity(rng.rows)
    residuals = []
    proper = True
    for i in range(rng.rows):
        for k in range(rng.cols):
            try:
                nf = normalize(rng.entries[i][k] - ident.entries[i][k], pres, step_bound)
            except Inconclusive:
                proper = False
                continue
            if not nf.is_zero():
                residuals.append(Defect("VV*", i + 1, k + 1, format_poly(nf)))
    properness = Properness.SYNTACTICALLY_PROPER if residuals and proper else Properness.UNKNOWN
    return IsometryReport(verdict, properness, tuple(residuals))


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

_ALG_RE = re.compile(r"^(?:cuntz:(\d+)|unc:(\d+),(\d+))$")


def base_unitary(alg: str) -> tuple[AMatrix, BasisType, Presentation]:
    """Generator matrix, Basis Type and presentation of ``cuntz:p`` or ``unc:m,n``."""
    m = _ALG_RE.match(alg.replace(" ", ""))
    if m is None:
        raise ValueError(f"witnesses exist for cuntz:p and unc:m,n presentations, got {alg!r}")
    pres = get_presentation(alg)
    if m.group(1):
        p = int(m.group(1))
        u = AMatrix(1, p, ((tuple(NCPoly.word((Letter(f"v{i}"),)) for i in range(1, p + 1))),))
        return u, BasisType(1, p - 1), pres
    rows, cols = int(m.group(2)), int(m.group(3))
    grid = tuple(
        tuple(NCPoly.word((Letter(f"u{i}_{j}"),)) for j in range(1, cols + 1)) for i in range(1, rows + 1)
    )
    return AMatrix(rows, cols, grid), BasisType(rows, cols - rows), pres


def witness(alg: str, a: int, b: int) -> AMatrix:
    """An ``a x b`` unitary over ``alg`` certifying ``A^a ≃ A^b``.

    Built as the product of lifts ``I_(r-N) ⊕ U`` taking rank ``r`` to
    ``r + K``, where ``U`` is the ``N x (N+K)`` generator matrix.
    """
    u, t, _ = base_unitary(alg)
    if a < 1 or b < 1:
        raise NotEquivalent(f"ranks must be positive, got {a} and {b}")
    if not equiv_ranks(t, a, b):
        raise NotEquivalent(f"ranks {a} and {b} are not equivalent for Basis Type {t}", anchor=f"type {t}")
    if a > b:
        return witness(alg, b, a).adjoint()
    if a == b:
        return AMatrix.identity(a)
    result = None
    for r in range(a, b, t.k_period):
        lift = u.block_identity(r - t.n_min)
        result = lift if result is None else result @ lift
    return result


# ---------------------------------------------------------------------------
# matrix files
# ---------------------------------------------------------------------------


def matrix_to_json(u: AMatrix, presentation: str) -> dict:
    return {
        "rows": u.rows,
        "cols": u.cols,
        "entries": [format_poly(x) for row in u.entries for x in row],
        "presentation": presentation,
    }


def matrix_from_json(data: dict) -> tuple[AMatrix, Presentation]:
    rows, cols = int(data["rows"]), int(data["cols"])
    flat = data["entries"]
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    pres = get_presentation(data["presentation"])
    grid = tuple(tuple(parse_poly(flat[i * cols + j]) for j in range(cols)) for i in range(rows))
    u = AMatrix(rows, cols, grid)
    undeclared = {g for row in grid for x in row for g in x.generators()} - set(pres.generators)
    if undeclared:
        raise ValueError(f"generators {sorted(undeclared)} are not part of {pres.name}")
    return u, pres


def load_matrix_file(path: str | Path) -> tuple[AMatrix, Presentation]:
    with open(path, encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def dump_matrix_file(u: AMatrix, presentation: str, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(u, presentation), fh, indent=2)
        fh.write("\n")
