"""``basistype`` command-line interface.

Exit codes: 0 success, 1 parse/usage error, 2 domain error (NotEquivalent,
NotFound, overflow, ...), 3 inconclusive verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .calculus import Knowledge, decide_equiv, infer, normalize_exact
from .catalog import Catalog, default_catalog, load_catalog
from .dsl import parse, presentation_for_atom, to_dsl
from .errors import BasisTypeError, NotExact, NotFound, ParseError
from .matrices import (
    Verdict,
    load_matrix_file,
    matrix_to_json,
    unitary_defects,
    witness,
)
from .presentation import get_presentation, step_bound_from_env
from .ranks import (
    EquivalenceWitnessSet,
    canonical_rank,
    class_count,
    derive_type,
    oracle_closure,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_INCONCLUSIVE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


class _Ctx:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.as_json: bool = args.json

    def emit(self, payload: dict, text: str) -> None:
        if self.as_json:
            print(json.dumps(payload, sort_keys=True), flush=True)
        else:
            print(text, flush=True)

    def catalog(self) -> Catalog:
        path = getattr(self.args, "catalog", None)
        if not path:
            return default_catalog()
        try:
            return load_catalog(path)
        except OSError as exc:
            raise UsageError(f"cannot read catalog file {path}: {exc.strerror or exc}") from None
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, BasisTypeError):
                raise
            raise UsageError(f"malformed catalog file {path}: {exc}") from None


def _nonneg(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"pair {chunk!r} must look like a:b")
        out.append((_positive(a), _positive(b)))
    return out


def _infer(ctx: _Ctx, src: str) -> tuple[str, Knowledge]:
    expr = parse(src)
    return to_dsl(expr), infer(expr, ctx.catalog())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_type(ctx: _Ctx) -> int:
    canon, k = _infer(ctx, ctx.args.expr)
    ctx.emit({"expr": canon, **k.to_json()}, f"{canon}: {k}")
    return EXIT_OK


def cmd_equiv(ctx: _Ctx) -> int:
    canon, k = _infer(ctx, ctx.args.expr)
    n, m = ctx.args.n, ctx.args.m
    d = decide_equiv(k, n, m)
    verdict = "undecided" if d.equivalent is None else d.equivalent
    payload = {"expr": canon, "n": n, "m": m, "equivalent": verdict, "reason": d.reason}
    if d.blocking:
        payload["blocking"] = d.blocking
    if d.equivalent is None:
        word = "undecided"
    else:
        word = "equivalent" if d.equivalent else "not equivalent"
    ctx.emit(payload, f"A^{n} and A^{m} over {canon}: {word} ({d.reason})")
    return EXIT_OK


def _require_exact(canon: str, k: Knowledge):
    t = normalize_exact(k)
    if t is None and not k.is_ibn:
        raise NotExact(f"{canon} has no exact Basis Type: {k}")
    return t


def cmd_canon(ctx: _Ctx) -> int:
    canon, k = _infer(ctx, ctx.args.expr)
    t = _require_exact(canon, k)
    n = ctx.args.n
    r = n if t is None else canonical_rank(t, n)
    ctx.emit({"expr": canon, "n": n, "canonical": r}, f"{r}")
    return EXIT_OK


def cmd_classes(ctx: _Ctx) -> int:
    canon, k = _infer(ctx, ctx.args.expr)
    t = _require_exact(canon, k)
    if t is None:
        ctx.emit(
            {"expr": canon, "count": "Infinite", "type": None, "classes": None},
            f"{canon} has IBN: every rank is its own class",
        )
        return EXIT_OK
    classes = [{"ranks": [r]} for r in range(t.n_min)]
    classes += [{"min": r, "period": t.k_period} for r in range(t.n_min, t.n_min + t.k_period)]
    lines = [f"{class_count(t)} classes for type {t}:"]
    lines += [f"  {{{r}}}" for r in range(t.n_min)]
    lines += [f"  {{{r}, {r + t.k_period}, {r + 2 * t.k_period}, ...}}" for r in range(t.n_min, t.n_min + t.k_period)]
    ctx.emit({"expr": canon, "count": class_count(t), "type": t.to_json(), "classes": classes}, "\n".join(lines))
    return EXIT_OK


def cmd_witness(ctx: _Ctx) -> int:
    args = ctx.args
    expr = parse(args.atom)
    pres_id = presentation_for_atom(expr)
    if pres_id is None:
        raise NotFound(f"{to_dsl(expr)} has no built-in presentation; witnesses exist for O(n) and Unc(m,n)")
    try:
        get_presentation(pres_id)
    except ValueError as exc:
        raise NotFound(str(exc)) from None
    u = witness(pres_id, args.n, args.m)
    payload = matrix_to_json(u, pres_id)
    code = EXIT_OK
    verdict_line = ""
    if args.verify:
        defects = unitary_defects(u, get_presentation(pres_id), step_bound_from_env())
        verdict = Verdict.INCONCLUSIVE if defects else Verdict.VERIFIED
        payload["verification"] = verdict.value
        verdict_line = f"\n{verdict.value}"
        if defects:
            code = EXIT_INCONCLUSIVE
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(matrix_to_json(u, pres_id), fh, indent=2)
            fh.write("\n")
    ctx.emit(payload, f"{u.rows}x{u.cols} unitary over {pres_id}:\n{u}{verdict_line}")
    return code


def cmd_verify(ctx: _Ctx) -> int:
    path = ctx.args.matrix_file
    try:
        u, pres = load_matrix_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc.strerror or exc}") from None
    except ParseError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix file {path}: {exc}") from None
    defects = unitary_defects(u, pres, step_bound_from_env())
    verdict = Verdict.INCONCLUSIVE if defects else Verdict.VERIFIED
    payload = {
        "result": verdict.value,
        "rows": u.rows,
        "cols": u.cols,
        "presentation": pres.name,
        "defects": [
            {"product": d.product, "row": d.row, "col": d.col, "residual": d.residual} for d in defects
        ],
    }
    lines = [verdict.value]
    lines += [f"  ({d.product} - I)[{d.row},{d.col}] -> {d.residual}" for d in defects]
    ctx.emit(payload, "\n".join(lines))
    return EXIT_OK if verdict is Verdict.VERIFIED else EXIT_INCONCLUSIVE


def cmd_oracle(ctx: _Ctx) -> int:
    pairs = ctx.args.pairs
    bound = ctx.args.bound
    try:
        ws = EquivalenceWitnessSet.from_iterable(pairs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ws.max_rank() > bound:
        raise UsageError(f"pair entry {ws.max_rank()} exceeds --bound {bound}")
    classes = oracle_closure(ws, bound)
    t = derive_type(ws) if len(ws) else None
    payload = {
        "bound": bound,
        "pairs": [list(p) for p in ws],
        "classes": [list(c) for c in classes],
        "derived_type": t.to_json() if t else None,
    }
    lines = ["{" + ", ".join(map(str, c)) + "}" for c in classes]
    if t:
        lines.append(f"closed-form type {t}")
    ctx.emit(payload, "\n".join(lines))
    return EXIT_OK


def cmd_catalog(ctx: _Ctx) -> int:
    cat = ctx.catalog()
    if ctx.args.id:
        entry = cat.lookup(ctx.args.id)
        e = entry.to_json()
        text = "\n".join(f"{key}: {json.dumps(value) if isinstance(value, dict) else value}" for key, value in e.items())
        ctx.emit({"entry": e}, text)
        return EXIT_OK
    entries = cat.list()
    lines = [f"{e.id:<14} {str(e.knowledge):<28} {e.display_name}" for e in entries]
    ctx.emit({"entries": [e.to_json() for e in entries]}, "\n".join(lines))
    return EXIT_OK


def cmd_validate_catalog(ctx: _Ctx) -> int:
    cat = ctx.catalog()
    violations = cat.validate()
    payload = {"valid": not violations, "checked": len(cat.list()), "violations": [v.to_json() for v in violations]}
    text = "\n".join(str(v) for v in violations) if violations else f"ok: {len(cat.list())} entries, no violations"
    ctx.emit(payload, text)
    return EXIT_OK if not violations else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    common.add_argument("--catalog", metavar="PATH", help="extend the shipped catalog with entries from a JSON file")

    parser = _Parser(prog="basistype", description="Basis Type calculus for unital C*-algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("type", parents=[common], help="infer Basis Type knowledge for an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("equiv", parents=[common], help="decide whether A^n and A^m are equivalent")
    p.add_argument("expr")
    p.add_argument("n", type=_nonneg)
    p.add_argument("m", type=_nonneg)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("canon", parents=[common], help="least rank equivalent to n")
    p.add_argument("expr")
    p.add_argument("n", type=_nonneg)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("classes", parents=[common], help="equivalence classes of standard modules")
    p.add_argument("expr")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("witness", parents=[common], help="build an n x m unitary witnessing A^n = A^m")
    p.add_argument("atom", help="O(p) or Unc(m,n)")
    p.add_argument("n", type=_positive)
    p.add_argument("m", type=_positive)
    p.add_argument("--verify", action="store_true", help="check the result with the rewriter")
    p.add_argument("-o", "--output", metavar="FILE", help="also write the matrix file here")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="verify a matrix file is unitary")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force congruence closure of witness pairs")
    p.add_argument("--pairs", type=_pairs, default=[], help="comma separated a:b pairs")
    p.add_argument("--bound", type=_positive, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries or show one")
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate-catalog", parents=[common], help="check catalog consistency rules")
    p.set_defaults(func=cmd_validate_catalog)
    return parser


def _report(as_json: bool, payload: dict) -> None:
    if as_json:
        print(json.dumps({"error": payload}, sort_keys=True), flush=True)
    else:
        print(f"error: {payload['message']}", file=sys.stderr, flush=True)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _report(as_json, {"code": "Usage", "message": str(exc)})
        return EXIT_USAGE
    ctx = _Ctx(args)
    try:
        return args.func(ctx)
    except ParseError as exc:
        _report(ctx.as_json, exc.to_json())
        return EXIT_USAGE
    except UsageError as exc:
        _report(ctx.as_json, {"code": "Usage", "message": str(exc)})
        return EXIT_USAGE
    except BasisTypeError as exc:
        _report(ctx.as_json, exc.to_json())
        return EXIT_DOMAIN
    except ValueError as exc:
        # environment overrides such as IBN_STEP_BOUND
        _report(ctx.as_json, {"code": "Usage", "message": str(exc)})
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
