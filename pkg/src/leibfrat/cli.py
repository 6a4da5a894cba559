"""Command line front end and the ``.lal`` structure-constant file format.

A ``.lal`` file looks like::

    # comments start with '#'
    field: GF(5)
    dim: 3
    basis: x y z
    x z = x
    z x = -1*x

Products that are not listed are zero.  Coefficients are integers or
``num/den``.

Exit codes: 0 success or pass, 1 a mathematical failure (counterexample
found), 2 usage or parse error, 3 budget exceeded or unsupported field.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .algebra import (
    LeibnizAlgebra,
    LeibnizIdentityViolation,
    NotAnIdeal,
    construct,
    invariants,
    left_center,
    series,
    with_field,
)
from .engel import CartanSearchFailed, find_cartan
from .exactlin import Field, Subspace
from .frattini import (
    GENFRAT_METHODS,
    CandidateRejected,
    NilUnavailable,
    NotProperIdeal,
    UnsupportedField,
    element_set,
    frattini_report,
    is_generalized_frattini,
    is_primitive_ideal,
    n_nongenerators,
    nongenerators,
    normal_nongenerators,
    validate_genfrat_witness,
)
from .lattice import BudgetExceeded, EnumBudget, WrongField, lattice_report
from .verify import STATEMENTS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3
SCHEMA_VERSION = 1


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


# ---------------------------------------------------------------------------
# .lal format
# ---------------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(rf"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?({_NAME})\s*")


def parse_combination(text: str, names, line: int = 0) -> dict[int, Fraction]:
    """``"2*a2 - a3"`` -> ``{index: coefficient}``; ``"0"`` is the empty combination."""
    text = text.strip()
    if not text:
        raise ParseError(line, "empty linear combination")
    if text == "0":
        return {}
    index = {n: i for i, n in enumerate(names)}
    out: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(line, f"cannot read term at {text[pos:]!r}")
        sign, coeff, name = m.groups()
        if sign is None and not first:
            raise ParseError(line, f"missing '+' or '-' before {name!r}")
        if name not in index:
            raise ParseError(line, f"unknown basis element {name!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        k = index[name]
        out[k] = out.get(k, 0) + c
        pos = m.end()
        first = False
    return out


def parse_lal(text: str) -> LeibnizAlgebra:
    header = {}
    products = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("field", "dim", "basis"):
            if key.strip() in header:
                raise ParseError(no, f"duplicate header {key.strip()!r}")
            header[key.strip()] = (no, rest.strip())
            continue
        products.append((no, line))
    for key in ("field", "dim"):
        if key not in header:
            raise ParseError(0, f"missing header {key!r}")
    no, ftext = header["field"]
    try:
        F = Field.parse(ftext)
    except ValueError as exc:
        raise ParseError(no, str(exc))
    no, dtext = header["dim"]
    if not dtext.isdigit():
        raise ParseError(no, f"dim must be a non-negative integer, got {dtext!r}")
    dim = int(dtext)
    if "basis" in header:
        no, btext = header["basis"]
        names = btext.split()
        if len(names) != dim:
            raise ParseError(no, f"basis lists {len(names)} names for dim {dim}")
        if len(set(names)) != dim:
            raise ParseError(no, "basis names repeat")
        for n in names:
            if not re.fullmatch(_NAME, n):
                raise ParseError(no, f"bad basis name {n!r}")
    else:
        names = [f"e{i + 1}" for i in range(dim)]
    index = {n: i for i, n in enumerate(names)}
    seen = set()
    rows = []
    for no, line in products:
        lhs, sep, rhs = line.partition("=")
        if not sep:
            raise ParseError(no, "expected 'a b = combination'")
        factors = lhs.split()
        if len(factors) != 2:
            raise ParseError(no, "left side must name exactly two basis elements")
        for f in factors:
            if f not in index:
                raise ParseError(no, f"unknown basis element {f!r}")
        i, j = index[factors[0]], index[factors[1]]
        if (i, j) in seen:
            raise ParseError(no, f"product {factors[0]} {factors[1]} given twice")
        seen.add((i, j))
        w = parse_combination(rhs, names, no)
        if F.is_finite and any(c.denominator % F.p == 0 for c in w.values()):
            raise ParseError(no, f"denominator divisible by {F.p}")
        rows.append((i, j, w))
    return construct(F, dim, rows, names)


def _fmt_coeff(F: Field, c) -> str:
    return str(c) if not F.is_finite else str(int(c))


def emit_lal(A: LeibnizAlgebra) -> str:
    """Canonical text: headers, then nonzero products in (i, j) order."""
    F = A.field
    lines = [f"field: {F}", f"dim: {A.dim}", f"basis: {' '.join(A.names)}"]
    for i in range(A.dim):
        for j in range(A.dim):
            w = A.table[i][j]
            terms = []
            for k, c in enumerate(w):
                if not c:
                    continue
                neg = not F.is_finite and c < 0
                mag = -c if neg else c
                body = A.names[k] if mag == 1 else f"{_fmt_coeff(F, mag)}*{A.names[k]}"
                terms.append(("- " if neg else "+ ") + body)
            if terms:
                rhs = " ".join(terms)
                rhs = rhs[2:] if rhs.startswith("+ ") else "-" + rhs[2:]
                lines.append(f"{A.names[i]} {A.names[j]} = {rhs}")
    return "\n".join(lines) + "\n"


def parse_vector(A: LeibnizAlgebra, text: str):
    w = parse_combination(text, A.names)
    F = A.field
    v = [F.zero] * A.dim
    for k, c in w.items():
        v[k] = F(c)
    return tuple(v)


def parse_subspace(A: LeibnizAlgebra, text: str) -> Subspace:
    """Comma-separated vectors, e.g. ``"a2+a3"`` or ``"x,y"``; ``"0"`` is the zero space."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError(0, "empty subspace description")
    return A.span([parse_vector(A, p) for p in parts])


# ---------------------------------------------------------------------------
# report helpers
# ---------------------------------------------------------------------------


def _sub(A: LeibnizAlgebra, U: Subspace | None):
    if U is None:
        return None
    return {"dim": U.dim, "basis": A.fmt_subspace(U)}


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        if set(obj) == {"dim", "basis"}:
            return [pad + _fmt_space(obj)]
        for k, v in obj.items():
            if isinstance(v, dict) and set(v) == {"dim", "basis"}:
                out.append(f"{pad}{k}: {_fmt_space(v)}")
            elif isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out += _text(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                sub = _text(v, indent + 1)
                out.append(pad + "- " + sub[0].strip())
                out += sub[1:]
            else:
                out.append(f"{pad}- {v}")
    else:
        out.append(pad + str(obj))
    return out


def _fmt_space(d) -> str:
    return "span{" + ", ".join(d["basis"]) + "}" if d["basis"] else "0"


class Context:
    def __init__(self, args):
        self.args = args
        self.budget = EnumBudget(args.budget_subspaces, args.budget_elements)
        self.seed = args.seed
        self.started = time.perf_counter()

    def emit(self, command: str, result: dict, code: int, source=None, A=None):
        tree = {
            "schema": SCHEMA_VERSION,
            "command": command,
            "input": source,
            "field": str(A.field) if A is not None else None,
            "dim": A.dim if A is not None else None,
            "basis": list(A.names) if A is not None else None,
            "seed": self.seed,
            "budget": {"max_subspaces": self.budget.max_subspaces, "max_elements": self.budget.max_elements},
            "result": result,
            "exit_code": code,
            "timing_s": round(time.perf_counter() - self.started, 6),
        }
        if self.args.format == "machine":
            print(json.dumps(tree, indent=1, default=str))
        else:
            head = f"{command}: {source}" if source else command
            if A is not None:
                head += f"  [{A.field}, dim {A.dim}]"
            print(head)
            print("\n".join(_text(result, 1)))
        return code


def load_algebra(source: str, field_override: str | None = None) -> tuple[LeibnizAlgebra, str, object]:
    """A ``.lal`` path or ``catalog:<name>``; returns (algebra, label, catalog entry or None)."""
    F = Field.parse(field_override) if field_override else None
    if source.startswith("catalog:"):
        entry = cat.get(source[len("catalog:"):], F)
        return entry.algebra, entry.label, entry
    A = parse_lal(Path(source).read_text())
    if F is not None:
        A = with_field(A, F)
    return A, source, None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(ctx: Context, A, src, entry):
    inv = invariants(A)
    return ctx.emit("check", {"leibniz_identity": "holds", "is_lie": inv.is_lie,
                              "is_abelian": A.is_abelian()}, EXIT_OK, src, A)


def cmd_invariants(ctx: Context, A, src, entry):
    inv = invariants(A)
    res = {
        "center": _sub(A, inv.center),
        "left_center": _sub(A, left_center(A)),
        "leib": _sub(A, inv.leib),
        "square": _sub(A, inv.square),
        "is_lie": inv.is_lie,
        "is_abelian": A.is_abelian(),
    }
    return ctx.emit("invariants", res, EXIT_OK, src, A)


def cmd_series(ctx: Context, A, src, entry):
    s = series(A)
    res = {
        "lower_central": [_sub(A, U) for U in s.lower_central],
        "omega": _sub(A, s.omega),
        "derived": [_sub(A, U) for U in s.derived],
        "upper_central": [_sub(A, U) for U in s.upper_central],
        "z_star": _sub(A, s.z_star),
        "nilpotent": s.nilpotent,
        "solvable": s.solvable,
        "nilpotency_class": s.nilpotency_class,
    }
    return ctx.emit("series", res, EXIT_OK, src, A)


def cmd_lattice(ctx: Context, A, src, entry):
    lat = lattice_report(A, ctx.budget)
    res = {
        "provenance": "exhaustive",
        "element_count": lat.element_count,
        "subalgebra_count": len(lat.subalgebras),
        "ideal_count": len(lat.ideals),
        "ideals": [_sub(A, U) for U in lat.ideals],
        "maximal_subalgebras": [_sub(A, U) for U in lat.maximal_subalgebras],
        "maximal_ideals": [_sub(A, U) for U in lat.maximal_ideals],
        "minimal_ideals": [_sub(A, U) for U in lat.minimal_ideals],
    }
    if ctx.args.all_subalgebras:
        res["subalgebras"] = [_sub(A, U) for U in lat.subalgebras]
    return ctx.emit("lattice", res, EXIT_OK, src, A)


def _asserted_values(entry) -> dict | None:
    if entry is None:
        return None
    vals = {k: a.value for k, a in entry.asserted.items() if isinstance(a.value, Subspace)}
    return vals or None


def cmd_frattini(ctx: Context, A, src, entry):
    rep = frattini_report(A, ctx.budget, _asserted_values(entry))
    res = {k: _sub(A, getattr(rep, k)) for k in ("F", "Phi", "R", "T", "tau", "nFrat", "Nil", "Rad")}
    res["provenance"] = rep.mode
    res["nil_provenance"] = rep.nil_mode
    res["complete"] = rep.complete
    return ctx.emit("frattini", res, EXIT_OK, src, A)


def _witness(A, w):
    if not w:
        return None
    return {k: _sub(A, v) if isinstance(v, Subspace) else v for k, v in w.items()}


def cmd_genfrat(ctx: Context, A, src, entry):
    H = parse_subspace(A, ctx.args.ideal)
    v = is_generalized_frattini(A, H, ctx.args.method, ctx.budget, ctx.seed)
    res = {
        "ideal": _sub(A, H),
        "method": v.method,
        "holds": v.holds,
        "provenance": v.mode,
        "partial": v.partial,
        "witness": _witness(A, v.witness),
    }
    if not v.holds:
        res["witness_revalidates"] = validate_genfrat_witness(A, H, v)
    return ctx.emit("genfrat", res, EXIT_OK if v.holds else EXIT_FAIL, src, A)


def cmd_cartan(ctx: Context, A, src, entry):
    r = find_cartan(A, budget=ctx.args.engel_budget, seed=ctx.seed)
    res = {
        "cartan": _sub(A, r.cartan),
        "verified_nilpotent_self_normalizing": r.verified,
        "provenance": "heuristic",
        "witness_chain": [A.fmt_vector(c) for c in r.witness_chain],
        "engel_computations": r.engel_computations,
    }
    return ctx.emit("cartan", res, EXIT_OK, src, A)


def cmd_primitive(ctx: Context, A, src, entry):
    K = parse_subspace(A, ctx.args.ideal)
    v = is_primitive_ideal(A, K, ctx.budget)
    res = {
        "ideal": _sub(A, K),
        "primitive": v.is_primitive,
        "phi_quotient_zero": v.phi_quotient_zero,
        "unique_minimal_ideal": v.unique_minimal,
        "quotient_dim_gt_1": v.dim_ok,
        "B": _sub(A, v.minimal_ideal_B),
        "provenance": "exhaustive" if A.field.is_finite else "certified",
    }
    return ctx.emit("primitive", res, EXIT_OK if v.is_primitive else EXIT_FAIL, src, A)


def cmd_nongen(ctx: Context, A, src, entry):
    rep = frattini_report(A, ctx.budget)
    res = {"provenance": "exhaustive"}
    ok = True
    for label, fn, key in (("nongenerators", nongenerators, "F"),
                           ("normal_nongenerators", normal_nongenerators, "R"),
                           ("n_nongenerators", n_nongenerators, "nFrat")):
        got = fn(A, ctx.budget)
        want = element_set(getattr(rep, key))
        eq = got == want
        ok = ok and eq
        res[label] = {"size": len(got), "equals": key, "agrees": eq}
        if ctx.args.list_elements:
            res[label]["elements"] = sorted(A.fmt_vector(x) for x in got)
    return ctx.emit("nongen", res, EXIT_OK if ok else EXIT_FAIL, src, A)


def _corpus(ctx: Context):
    a = ctx.args
    if a.catalog:
        return cat.finite_catalog() + cat.rational_catalog(), "catalog"
    if a.exhaustive_dim2 is not None:
        return cat.exhaustive_dim2(a.exhaustive_dim2), f"exhaustive-dim2 GF({a.exhaustive_dim2})"
    if a.acceptance:
        return cat.acceptance_corpus(), "acceptance"
    if a.file:
        A, src, entry = load_algebra(a.file, a.field_override)
        return [entry] if entry is not None else [(src, A)], src
    raise _Usage("verify needs a file, --catalog, --acceptance or --exhaustive-dim2 P")


class _Usage(Exception):
    pass


def cmd_verify(ctx: Context):
    corpus, src = _corpus(ctx)
    stmts = None
    if ctx.args.statements:
        stmts = [s.strip() for s in ctx.args.statements.split(",") if s.strip()]
        unknown = [s for s in stmts if s not in STATEMENTS]
        if unknown:
            raise _Usage(f"unknown statements: {', '.join(unknown)}")
    results, summary = run_suite(corpus, stmts, ctx.budget, ctx.seed)
    res = {"summary": summary}
    rows = []
    for r in results:
        if r.verdict == "fail" or ctx.args.all_results:
            rows.append({
                "statement": r.statement_id, "algebra": r.algebra, "verdict": r.verdict,
                "skip_reason": r.skip_reason, "witness": r.witness, "instances": r.instances,
                "parts": r.parts, "partial": r.partial, "findings": r.findings, "notes": r.notes,
                "timing_s": round(r.timing, 6),
            })
    res["results"] = rows
    res["findings"] = [f"{r.statement_id} {r.algebra}: {f}" for r in results for f in r.findings]
    fails = summary["totals"]["fail"]
    code = EXIT_FAIL if fails else EXIT_OK
    if not fails and results and summary["totals"]["pass"] == 0:
        code = EXIT_UNSUPPORTED
    return ctx.emit("verify", res, code, src)


def cmd_catalog(ctx: Context):
    a = ctx.args
    if a.action == "list":
        rows = []
        for name, (build, default) in cat.NAMED.items():
            e = cat.get(name)
            rows.append({"name": name, "default_field": str(default), "dim": e.algebra.dim,
                         "flags": list(e.flags), "asserted": sorted(e.asserted)})
        return ctx.emit("catalog list", {"entries": rows}, EXIT_OK)
    if not a.name:
        raise _Usage("catalog emit needs an entry name")
    F = Field.parse(a.field_override) if a.field_override else None
    entry = cat.get(a.name, F)
    sys.stdout.write(emit_lal(entry.algebra))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

FILE_COMMANDS = {
    "check": cmd_check,
    "invariants": cmd_invariants,
    "series": cmd_series,
    "lattice": cmd_lattice,
    "frattini": cmd_frattini,
    "genfrat": cmd_genfrat,
    "cartan": cmd_cartan,
    "primitive": cmd_primitive,
    "nongen": cmd_nongen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-subspaces", type=int, default=200_000)
    common.add_argument("--budget-elements", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--field-override", default=None, help="re-read the algebra over Q or GF(p)")

    p = argparse.ArgumentParser(prog="leibfrat", description="Frattini-type invariants of Leibniz algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in FILE_COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file", help=".lal file or catalog:<name>")
        if name in ("genfrat", "primitive"):
            sp.add_argument("--ideal", required=True, help='comma-separated basis, e.g. "a2+a3"')
        if name == "genfrat":
            sp.add_argument("--method", choices=GENFRAT_METHODS, default="nil_pullback")
        if name == "cartan":
            sp.add_argument("--engel-budget", type=int, default=500)
        if name == "lattice":
            sp.add_argument("--all-subalgebras", action="store_true")
        if name == "nongen":
            sp.add_argument("--list-elements", action="store_true")
    vp = sub.add_parser("verify", parents=[common])
    vp.add_argument("file", nargs="?")
    vp.add_argument("--catalog", action="store_true")
    vp.add_argument("--acceptance", action="store_true")
    vp.add_argument("--exhaustive-dim2", type=int, metavar="P")
    vp.add_argument("--statements", help="comma-separated statement ids")
    vp.add_argument("--all-results", action="store_true")
    cp = sub.add_parser("catalog", parents=[common])
    cp.add_argument("action", choices=("list", "emit"))
    cp.add_argument("name", nargs="?")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(ctx)
        if args.command == "catalog":
            return cmd_catalog(ctx)
        A, src, entry = load_algebra(args.file, args.field_override)
        return FILE_COMMANDS[args.command](ctx, A, src, entry)
    except LeibnizIdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, _Usage, NotAnIdeal, NotProperIdeal, CandidateRejected, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, WrongField, UnsupportedField, NilUnavailable, CartanSearchFailed) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
