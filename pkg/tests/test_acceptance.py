"""Acceptance criteria 1-10, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are written to
the terminal even when output capture is on.
"""

from __future__ import annotations

import random
import time

import pytest

from leibfrat import catalog
from leibfrat.algebra import (
    is_ideal,
    is_nilpotent,
    is_solvable,
    leibniz_violation,
    product_space,
    quotient,
    series,
)
from leibfrat.cli import emit_lal, parse_lal
from leibfrat.engel import engel_subalgebra, find_cartan, fitting, is_cartan
from leibfrat.exactlin import GF, QQ, Matrix, rref
from leibfrat.frattini import (
    certify_simple,
    frattini_report,
    is_generalized_frattini,
    is_primitive_ideal,
    resolve_nil,
    validate_genfrat_witness,
)
from leibfrat.lattice import count_subspaces, lattice_report
from leibfrat.verify import STATEMENTS, run_suite


@pytest.fixture
def emit(capsys):
    def _emit(n: int, ok: bool, detail: str, elapsed: float, limit: float | None = None):
        timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
        status = "PASS" if ok and (limit is None or elapsed < limit) else "FAIL"
        with capsys.disabled():
            print(f"\n[acceptance {n:2d}] {status}  {detail}  [{timing}]")
        return status == "PASS"
    return _emit


@pytest.fixture(scope="session")
def corpus_suite():
    corpus = catalog.finite_catalog() + catalog.rational_catalog() + catalog.acceptance_corpus()
    start = time.perf_counter()
    results, summary = run_suite(corpus)
    return corpus, results, summary, time.perf_counter() - start


def _statement_totals(results, ids):
    fails = [r for r in results if r.statement_id in ids and r.verdict == "fail"]
    passes = sum(r.verdict == "pass" for r in results if r.statement_id in ids)
    return fails, passes


def test_criterion_01_example8(emit):
    start = time.perf_counter()
    problems = []
    for F in (GF(3), GF(5), QQ):
        A = catalog.example8(F).algebra
        x, y, _ = A.basis()
        H, K = A.span([x]), A.span([y])
        methods = ["nil_pullback"] + (["theorem7_exhaustive"] if F.is_finite else [])
        for m in methods:
            if not (is_generalized_frattini(A, H, m).holds and is_generalized_frattini(A, K, m).holds):
                problems.append(f"{F} {m}: H or K rejected")
            v = is_generalized_frattini(A, H + K, m)
            if v.holds or not v.witness["J"].is_full() or not validate_genfrat_witness(A, H + K, v):
                problems.append(f"{F} {m}: H+K verdict/witness wrong")
        if resolve_nil(A)[0] != H + K:
            problems.append(f"{F}: Nil != span{{x,y}}")
        if not is_solvable(A) or is_nilpotent(A):
            problems.append(f"{F}: solvability flags")
    elapsed = time.perf_counter() - start
    ok = emit(1, not problems, "example8 over GF(3), GF(5), Q: H, K pass; H+K fails with J = A; "
              f"Nil = span{{x,y}} {problems or ''}", elapsed, 1.0)
    assert ok, problems


def test_criterion_02_example17(emit):
    start = time.perf_counter()
    problems = []
    for F in (QQ, GF(5)):
        A = catalog.example17(F).algebra
        K = A.span([(0, 1, 1)])
        nil = A.span([A.e(1), A.e(2)])
        if not is_ideal(A, K):
            problems.append(f"{F}: K not an ideal")
        q = quotient(A, K)
        if F.is_finite:
            Q = q.algebra
            lat = lattice_report(Q)
            if len(lat.maximal_subalgebras) != 2:
                problems.append(f"{F}: {len(lat.maximal_subalgebras)} maximal subalgebras in A/K")
            if not frattini_report(Q).Phi.is_zero():
                problems.append(f"{F}: Phi(A/K) != 0")
            if list(lat.minimal_ideals) != [Q.span([q.project(A.e(1))])]:
                problems.append(f"{F}: minimal ideals of A/K")
        pv = is_primitive_ideal(A, K)
        if not pv.is_primitive:
            problems.append(f"{F}: K not primitive")
        if not is_generalized_frattini(A, K).holds:
            problems.append(f"{F}: K not generalized Frattini")
        if not (pv.minimal_ideal_B == nil == resolve_nil(A)[0]):
            problems.append(f"{F}: B != Nil(A) != span{{a2,a3}}")
        if engel_subalgebra(A, A.e(0)).contains(A.e(0)):
            problems.append(f"{F}: a in E_A(a)")
    A = catalog.example17(QQ).algebra
    r = find_cartan(A)
    if not (r.verified and is_cartan(A, r.cartan) and r.cartan == A.span([(1, 0, -1)])):
        problems.append("Q: Cartan != span{a-a3}")
    elapsed = time.perf_counter() - start
    ok = emit(2, not problems, f"example17 over Q and GF(5): primitive, generalized Frattini, B = Nil, "
              f"Cartan span{{a-a3}} {problems or ''}", elapsed, 1.0)
    assert ok, problems


def test_criterion_03_method_agreement(emit):
    corpus = catalog.acceptance_corpus()
    start = time.perf_counter()
    results, summary = run_suite(corpus, ["Thm7"])
    elapsed = time.perf_counter() - start
    fails = [r for r in results if r.verdict == "fail"]
    ideals = sum(r.instances for r in results)
    ok = emit(3, not fails and summary["per_statement"]["Thm7"]["pass"] == len(corpus),
              f"nil_pullback vs theorem7_exhaustive on {len(corpus)} algebras, {ideals} checks, "
              f"{len(fails)} disagreements", elapsed, 60.0)
    assert ok, fails


def test_criterion_04_nilpotency_biconditionals(emit, corpus_suite):
    corpus, results, _, elapsed = corpus_suite
    start = time.perf_counter()
    fails, passes = _statement_totals(results, {"Thm26", "Cor27", "Thm34"})
    problems = [f"{r.statement_id} {r.algebra}" for r in fails]
    for F in (GF(2), GF(3)):
        A = catalog.heisenberg(F).algebra
        rep = frattini_report(A)
        sq = product_space(A, A.full(), A.full())
        if not (rep.Phi == sq == rep.nFrat == rep.R and rep.tau.is_full()):
            problems.append(f"heisenberg {F}: nilpotent side")
    for e in (catalog.example8(GF(3)), catalog.example17(GF(5))):
        rep = frattini_report(e.algebra)
        sq = product_space(e.algebra, e.algebra.full(), e.algebra.full())
        if rep.R <= rep.tau or rep.Phi == sq or rep.Phi == rep.nFrat == rep.R:
            problems.append(f"{e.label}: non-nilpotent side")
    elapsed += time.perf_counter() - start
    ok = emit(4, not problems and passes > 0, f"Thm26/Cor27/Thm34 biconditionals: {passes} passing checks, "
              f"{len(fails)} failures {problems or ''}", elapsed)
    assert ok, problems


def test_criterion_05_prop31_prop32(emit, corpus_suite):
    _, results, summary, elapsed = corpus_suite
    fails, passes = _statement_totals(results, {"Prop31", "Prop32"})
    ok = emit(5, not fails and passes > 0, f"Phi <= nFrat <= R and R = nFrat when solvable: "
              f"{summary['per_statement']['Prop31']['pass']} + {summary['per_statement']['Prop32']['pass']} "
              f"passing reports, {len(fails)} failures", elapsed)
    assert ok, fails


def test_criterion_06_nongenerators(emit):
    pool = catalog.finite_catalog() + catalog.acceptance_corpus() + catalog.exhaustive_dim2(3)
    corpus = [e for e in pool if e.algebra.dim <= 3 and e.algebra.field.p in (2, 3)]
    start = time.perf_counter()
    results, _ = run_suite(corpus, ["Prop35", "Prop36", "Prop38", "Lemma37"])
    elapsed = time.perf_counter() - start
    fails = [r for r in results if r.verdict == "fail"]
    skipped = [r for r in results if r.verdict == "skipped"]
    ok = emit(6, not fails and not skipped, f"non-generator sets = F, R, nFrat and the ideal-closure identity "
              f"on {len(corpus)} algebras (dim <= 3, GF(2)/GF(3)): {len(fails)} failures, "
              f"{len(skipped)} skipped", elapsed, 60.0)
    assert ok, fails + skipped


def test_criterion_07_tau_center(emit, corpus_suite):
    _, results, summary, elapsed = corpus_suite
    ids = ["Lemma22", "Prop23", "Prop24", "Prop25"]
    fails, passes = _statement_totals(results, set(ids))
    counts = ", ".join(f"{s} {summary['per_statement'][s]['pass']}" for s in ids)
    ok = emit(7, not fails and all(summary["per_statement"][s]["pass"] for s in ids),
              f"tau = Z = Z* when Phi = 0, tau passes, maximal passing ideals contain tau and Z*: "
              f"passes {counts}; {len(fails)} failures", elapsed)
    assert ok, fails


def test_criterion_08_gl_sl(emit):
    start = time.perf_counter()
    problems = []
    sl2 = catalog.sl(QQ, 2).algebra
    rep = frattini_report(sl2)
    if not (certify_simple(sl2) and rep.nFrat.is_zero() and rep.R.is_full()):
        problems.append("sl2(Q)")
    gl2q = catalog.gl(QQ, 2)
    scal = gl2q.algebra.span([(1, 0, 0, 1)])
    checks = catalog.verify_entry(gl2q)
    nil, mode = resolve_nil(gl2q.algebra, "asserted", scal)
    if not (all(checks.values()) and nil == scal and is_solvable(gl2q.algebra, scal) and mode == "asserted"):
        problems.append("gl2(Q) asserted Nil = Rad = Z")
    gl2 = catalog.gl(GF(2), 2).algebra
    r2 = frattini_report(gl2)
    nfrat_nil = is_nilpotent(gl2, r2.nFrat)
    if count_subspaces(2, 4) != 67 or not (r2.Phi <= r2.nFrat <= r2.R):
        problems.append("gl2(GF2) chain")
    elapsed = time.perf_counter() - start
    ok = emit(8, not problems, f"sl2(Q) simple with nFrat = 0, R = A; gl2(Q) scalars = Nil = Rad; "
              f"gl2(GF(2)) 67-subspace report, chain holds; finding: nFrat(gl2(GF(2))) dim {r2.nFrat.dim} "
              f"nilpotent = {nfrat_nil} {problems or ''}", elapsed, 5.0)
    assert ok, problems


def test_criterion_09_structural_properties(emit):
    start = time.perf_counter()
    rng = random.Random(2024)
    seeds = [rng.randrange(10**6) for _ in range(1000)]
    corpus = catalog.random_extension_corpus(seeds)
    problems = []
    for e in corpus:
        A = e.algebra
        F = A.field
        if leibniz_violation(F, A.dim, A.table) is not None:
            problems.append(f"identity {e.label}")
        basis = A.basis()
        for x in basis:
            xx = A.multiply(x, x)
            if any(any(A.multiply(xx, y)) for y in basis):
                problems.append(f"square {e.label}")
        s = series(A)
        if not all(is_ideal(A, U) for U in s.lower_central + s.derived + s.upper_central):
            problems.append(f"series {e.label}")
        x = tuple(F(rng.randint(-3, 3)) for _ in range(A.dim))
        A0, A1 = fitting(A, x)
        if not ((A0 + A1).is_full() and (A0 & A1).is_zero()):
            problems.append(f"fitting {e.label}")
        m = Matrix.from_rows(F, [[rng.randint(-3, 3) for _ in range(A.dim)] for _ in range(A.dim)])
        if rref(rref(m)[0]) != rref(m):
            problems.append(f"rref {e.label}")
        if parse_lal(emit_lal(A)) != A:
            problems.append(f"round trip {e.label}")
    again = catalog.random_extension_corpus(seeds[:50])
    if [e.algebra for e in again] != [e.algebra for e in corpus[:50]]:
        problems.append("seed determinism")
    elapsed = time.perf_counter() - start
    ok = emit(9, not problems, f"identity, square annihilation, series ideals, Fitting sum, RREF, "
              f"round trip, seeds on {len(corpus)} random algebras: {len(problems)} failures", elapsed, 60.0)
    assert ok, problems[:10]


def test_criterion_10_registry(emit, corpus_suite):
    corpus, results, summary, elapsed = corpus_suite
    missing = [s for s, v in summary["per_statement"].items() if v["pass"] == 0]
    unreasoned = [r for r in results if r.verdict == "skipped" and not r.skip_reason]
    ok = emit(10, len(STATEMENTS) == 33 and not missing and not unreasoned and summary["totals"]["fail"] == 0,
              f"{len(STATEMENTS)} statements, each passing non-vacuously over {len(corpus)} algebras "
              f"({summary['totals']['pass']} pass, {summary['totals']['fail']} fail, "
              f"{summary['totals']['skipped']} skipped with reasons); never passed: {missing}", elapsed)
    assert ok, missing
