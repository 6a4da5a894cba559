"""Statement harness: every numbered result is a named check on one algebra.

A check never passes vacuously; with no instantiated instance it reports
``skipped`` with a reason.  Biconditionals are split into ``forward`` and
``backward`` parts so a one-sided failure is attributable.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .algebra import (
    LeibnizAlgebra,
    center,
    is_ideal,
    is_nilpotent,
    is_solvable,
    left_center,
    lower_central,
    lower_central_left,
    omega,
    product_space,
    quotient,
    series,
)
from .exactlin import Subspace
from .frattini import (
    NilUnavailable,
    UnsupportedField,
    candidate_ideals,
    element_set,
    frattini_report,
    is_generalized_frattini,
    is_primitive_ideal,
    lemma37_check,
    n_nongenerators,
    nongenerators,
    normal_nongenerators,
    resolve_nil,
    validate_genfrat_witness,
)
from .lattice import DEFAULT_BUDGET, BudgetExceeded, EnumBudget, WrongField, lattice_report


class Skip(Exception):
    pass


@dataclass
class CheckResult:
    statement_id: str
    algebra: str
    verdict: str  # "pass" | "fail" | "skipped"
    skip_reason: str | None = None
    witness: dict | None = None
    timing: float = 0.0
    instances: int = 0
    parts: dict = field(default_factory=dict)
    partial: bool = False
    findings: list = field(default_factory=list)
    notes: list = field(default_factory=list)


class Tally:
    def __init__(self):
        self.parts: dict[str, str] = {}
        self.instances = 0
        self.witness = None
        self.findings: list[str] = []
        self.notes: list[str] = []
        self.partial = False

    def check(self, part: str, ok: bool, **witness):
        self.instances += 1
        if ok:
            self.parts.setdefault(part, "pass")
        else:
            self.parts[part] = "fail"
            if self.witness is None:
                self.witness = {"part": part, **witness}


# ---------------------------------------------------------------------------
# per-algebra cache
# ---------------------------------------------------------------------------


class Landscape:
    """Lazily computed, cached facts about one algebra."""

    def __init__(self, A: LeibnizAlgebra, name: str = "", budget: EnumBudget = DEFAULT_BUDGET,
                 seed: int = 0, hints=()):
        self.A = A
        self.name = name or repr(A)
        self.budget = budget
        self.seed = seed
        self.hints = tuple(hints)
        self._passes: dict = {}
        self._quotients: dict = {}

    @property
    def finite(self) -> bool:
        return self.A.field.is_finite

    @functools.cached_property
    def full(self) -> Subspace:
        return self.A.full()

    @functools.cached_property
    def zero(self) -> Subspace:
        return self.A.zero_space()

    @functools.cached_property
    def lattice(self):
        if not self.finite:
            raise Skip(f"field unsupported: exhaustive lattice needs a prime field, got {self.A.field}")
        try:
            return lattice_report(self.A, self.budget)
        except BudgetExceeded as exc:
            raise Skip(f"budget: {exc}")

    @functools.cached_property
    def ideals(self) -> tuple:
        """All ideals (prime field) or the computable candidate ideals (Q)."""
        if self.finite:
            return self.lattice.ideals
        return tuple(candidate_ideals(self.A, self.hints))

    @property
    def ideals_partial(self) -> bool:
        return not self.finite

    @functools.cached_property
    def proper_ideals(self) -> tuple:
        return tuple(I for I in self.ideals if not I.is_full())

    @functools.cached_property
    def report(self):
        try:
            return frattini_report(self.A, self.budget)
        except (UnsupportedField, NilUnavailable) as exc:
            raise Skip(f"field unsupported: {exc}")
        except BudgetExceeded as exc:
            raise Skip(f"budget: {exc}")

    def need(self, *keys):
        rep = self.report
        missing = [k for k in keys if getattr(rep, k) is None]
        if missing:
            raise Skip(f"report lacks {', '.join(missing)} over {self.A.field} ({rep.mode} mode)")
        return [getattr(rep, k) for k in keys]

    @functools.cached_property
    def series(self):
        return series(self.A)

    @property
    def nilpotent(self) -> bool:
        return self.series.nilpotent

    @property
    def solvable(self) -> bool:
        return self.series.solvable

    @functools.cached_property
    def center(self) -> Subspace:
        return center(self.A)

    @functools.cached_property
    def square(self) -> Subspace:
        return product_space(self.A, self.full, self.full)

    def passes(self, H: Subspace) -> bool | None:
        """nil_pullback verdict for a proper ideal H (None when Nil(A/H) is unavailable)."""
        if H not in self._passes:
            try:
                v = is_generalized_frattini(self.A, H, "nil_pullback", self.budget)
                self._passes[H] = v.holds
            except (NilUnavailable, BudgetExceeded):
                self._passes[H] = None
        return self._passes[H]

    @functools.cached_property
    def passing(self) -> tuple:
        return tuple(H for H in self.proper_ideals if self.passes(H))

    def quotient_landscape(self, N: Subspace) -> tuple:
        if N not in self._quotients:
            q = quotient(self.A, N)
            self._quotients[N] = (q, Landscape(q.algebra, f"{self.name}/N", self.budget, self.seed))
        return self._quotients[N]

    @functools.cached_property
    def primitive(self) -> list:
        if not self.finite:
            raise Skip("field unsupported: primitive ideals need minimal ideals of quotients")
        out = []
        for K in self.proper_ideals:
            v = is_primitive_ideal(self.A, K, self.budget)
            if v.is_primitive:
                out.append((K, v))
        return out

    def elements_of(self, U: Subspace) -> set:
        return element_set(U)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def _prop1(L: Landscape, t: Tally):
    A = L.A
    Phi = L.report.Phi if _has(L, "Phi") else None
    for H in L.passing:
        t.check("1_nilpotent", is_nilpotent(A, H), H=H)
        for N in L.ideals:
            if N <= H:
                ok = L.passes(N)
                if ok is not None:
                    t.check("2_subideal", ok, H=H, N=N)
        if Phi is not None:
            HP = H + Phi
            t.check("3_plus_phi", not HP.is_full() and bool(L.passes(HP)), H=H, sum=HP)
        HZ = H + L.center
        if not HZ.is_full():
            ok = L.passes(HZ)
            if ok is not None:
                t.check("4_plus_center", ok, H=H, sum=HZ)


def _has(L: Landscape, key: str) -> bool:
    try:
        return getattr(L.report, key) is not None
    except Skip:
        return False


def _cor2(L: Landscape, t: Tally):
    if not L.center.is_full():
        ok = L.passes(L.center)
        if ok is not None:
            t.check("center", ok, Z=L.center)
    if _has(L, "Phi"):
        Phi = L.report.Phi
        ok = L.passes(Phi)
        if ok is not None:
            t.check("phi", ok, Phi=Phi)


def _lemma3(L: Landscape, t: Tally):
    if not L.nilpotent:
        raise Skip("precondition: A is not nilpotent")
    for H in L.proper_ideals:
        t.check("proper_ideal_passes", bool(L.passes(H)), H=H)


def _thm4(L: Landscape, t: Tally):
    A = L.A
    for H in L.passing:
        for K in L.ideals:
            if H <= K and is_nilpotent(A, K, mod=H):
                t.check("K_nilpotent", is_nilpotent(A, K), H=H, K=K)


def _cor5(L: Landscape, t: Tally):
    if L.A.dim == 0:
        raise Skip("precondition: A = 0")
    if L.square.is_full():
        raise Skip("precondition: A^2 = A (perfect), a generalized Frattini ideal must be proper")
    p = L.passes(L.square)
    if p is None:
        raise Skip("Nil(A/A^2) unavailable")
    if L.nilpotent:
        t.check("forward", p, A2=L.square)
    if p:
        t.check("backward", L.nilpotent, A2=L.square)
    if not L.nilpotent and not p:
        t.check("both_false", True)


def _cor6(L: Landscape, t: Tally):
    A = L.A
    for H in L.passing:
        for K in L.ideals:
            if omega(A, K) <= H:
                t.check("K_nilpotent", is_nilpotent(A, K), H=H, K=K)


def _thm7(L: Landscape, t: Tally):
    if not L.finite:
        raise Skip("field unsupported: theorem7_exhaustive needs a prime field")
    A = L.A
    for H in L.proper_ideals:
        a = is_generalized_frattini(A, H, "nil_pullback", L.budget)
        b = is_generalized_frattini(A, H, "theorem7_exhaustive", L.budget)
        t.check("method_agreement", a.holds == b.holds, H=H, nil_pullback=a.holds, theorem7=b.holds)
        for v in (a, b):
            if not v.holds:
                t.check("witness_revalidates", validate_genfrat_witness(A, H, v), H=H, witness=v.witness)
        try:
            c = is_generalized_frattini(A, H, "definition_cartan", L.budget)
        except BudgetExceeded:
            continue
        if c.holds != a.holds:
            t.findings.append(f"definition_cartan differs from the nil-pullback criterion on H={A.fmt_subspace(H)}: "
                              f"cartan={c.holds}, nil_pullback={a.holds}")


def _thm9(L: Landscape, t: Tally):
    for H in L.passing:
        for K in L.proper_ideals:
            if H <= K:
                q, QL = L.quotient_landscape(H)
                in_a = L.passes(K)
                in_q = QL.passes(q.project_subspace(K))
                if in_a is None or in_q is None:
                    continue
                if in_q:
                    t.check("forward", in_a, H=H, K=K)
                if in_a:
                    t.check("backward", in_q, H=H, K=K)


def _nil(L: Landscape) -> Subspace:
    return L.need("Nil")[0]


def _prop10(L: Landscape, t: Tally):
    A = L.A
    N = _nil(L)
    if N.is_full() or not L.passes(N):
        raise Skip("precondition: Nil(A) is not generalized Frattini")
    for I in L.ideals:
        if is_solvable(A, I):
            ok = is_nilpotent(A, I) and not I.is_full() and bool(L.passes(I))
            t.check("solvable_ideal_nilpotent_and_passes", ok, I=I)


def _cor11(L: Landscape, t: Tally):
    N = _nil(L)
    if N.is_full() or not L.passes(N):
        raise Skip("precondition: Nil(A) is not generalized Frattini")
    t.check("not_solvable", not L.solvable)


def _prop13(L: Landscape, t: Tally):
    N = _nil(L)
    for H in L.passing:
        q, QL = L.quotient_landscape(H)
        try:
            Nq, _ = resolve_nil(q.algebra, budget=L.budget)
        except NilUnavailable:
            continue
        t.check("nil_quotient", q.preimage(Nq) == N, H=H)


def _cor14(L: Landscape, t: Tally):
    if L.nilpotent:
        raise Skip("precondition: A is nilpotent")
    N, R = L.need("Nil", "Rad")
    p = L.passes(N)
    if p is None:
        raise Skip("Nil(A/Nil(A)) unavailable")
    if p:
        t.check("forward", N == R, Nil=N, Rad=R)
    if N == R:
        t.check("backward", p, Nil=N, Rad=R)
    if not p and N != R:
        t.check("both_false", True)


def _thm16(L: Landscape, t: Tally):
    A = L.A
    # the Engel criterion is stated over infinite fields; over GF(p) disagreements are findings
    t.partial = True
    for H in L.proper_ideals:
        ref = L.passes(H)
        if ref is None:
            continue
        v = is_generalized_frattini(A, H, "theorem16_engel", L.budget, L.seed, L.hints)
        if not v.holds:
            t.check("engel_witness_revalidates", validate_genfrat_witness(A, H, v), H=H, witness=v.witness)
        if v.holds == ref:
            t.check("agrees_with_nil_pullback", True)
        elif L.finite:
            t.findings.append(f"Engel criterion {v.holds} vs nil-pullback criterion {ref} on H={A.fmt_subspace(H)}")
        elif ref:
            t.check("agrees_with_nil_pullback", False, H=H, witness=v.witness)
        else:
            t.notes.append(f"no Engel violation found for non-passing H={A.fmt_subspace(H)} (sampled pool)")


def _solvable_primitive(L: Landscape):
    if not L.solvable:
        raise Skip("precondition: A is not solvable")
    prims = L.primitive
    if not prims:
        raise Skip("precondition: no primitive ideal")
    return prims


def _lemma18(L: Landscape, t: Tally):
    prims = L.primitive
    if not prims:
        raise Skip("precondition: no primitive ideal")
    Phi = L.need("Phi")[0]
    for K, _ in prims:
        t.check("contains_phi", Phi <= K, K=K)
        t.check("quotient_not_nilpotent", not is_nilpotent(L.A, None, mod=K), K=K)
        t.check("A_not_nilpotent", not L.nilpotent, K=K)


def _prop19(L: Landscape, t: Tally):
    N = _nil(L)
    for K, _ in _solvable_primitive(L):
        p = L.passes(K)
        if p:
            t.check("forward", K < N, K=K)
        if K < N:
            t.check("backward", bool(p), K=K)
        if not p and not K < N:
            t.check("both_false", True)


def _thm20(L: Landscape, t: Tally):
    N = _nil(L)
    for K, v in _solvable_primitive(L):
        p = L.passes(K)
        if p:
            t.check("forward", v.minimal_ideal_B == N, K=K, B=v.minimal_ideal_B)
        if v.minimal_ideal_B == N:
            t.check("backward", bool(p), K=K)
        if not p and v.minimal_ideal_B != N:
            t.check("both_false", True)


def _cor21(L: Landscape, t: Tally):
    found = False
    for K, _ in _solvable_primitive(L):
        if not L.passes(K):
            continue
        found = True
        for J in L.proper_ideals:
            if K < J:
                t.check("maximal_passing", not L.passes(J), K=K, J=J)
        t.check("has_instance", True)
    if not found:
        raise Skip("precondition: no generalized Frattini primitive ideal")


def _lemma22(L: Landscape, t: Tally):
    Phi, tau = L.need("Phi", "tau")
    if not Phi.is_zero():
        raise Skip("precondition: Phi(A) != 0")
    t.check("tau_eq_center", tau == L.center, tau=tau, Z=L.center)
    t.check("center_eq_zstar", L.center == L.series.z_star, Z=L.center, Zstar=L.series.z_star)


def _prop23(L: Landscape, t: Tally):
    tau = L.need("tau")[0]
    if tau.is_full():
        raise Skip("precondition: tau(A) = A (not proper)")
    ok = L.passes(tau)
    if ok is None:
        raise Skip("Nil(A/tau) unavailable")
    t.check("tau_passes", ok, tau=tau)


def _maximal_passing(L: Landscape) -> list:
    if not L.finite:
        raise Skip("field unsupported: maximality needs the full ideal lattice")
    ps = L.passing
    return [H for H in ps if not any(H < J for J in ps)]


def _prop24_25(L: Landscape, t: Tally, which: str):
    if L.nilpotent:
        raise Skip("precondition: A is nilpotent")
    Phi, tau = L.need("Phi", "tau")
    if not Phi.is_zero():
        raise Skip("precondition: Phi(A) != 0")
    target = tau if which == "tau" else L.series.z_star
    for H in _maximal_passing(L):
        t.check(f"contains_{which}", target <= H, H=H, target=target)


def _thm26(L: Landscape, t: Tally):
    R, tau = L.need("R", "tau")
    c = R <= tau
    if L.nilpotent:
        t.check("forward", c, R=R, tau=tau)
    if c:
        t.check("backward", L.nilpotent, R=R, tau=tau)
    if not c and not L.nilpotent:
        t.check("both_false", True)


def _cor27(L: Landscape, t: Tally):
    Phi = L.need("Phi")[0]
    c = Phi == L.square
    if L.nilpotent:
        t.check("forward", c, Phi=Phi, A2=L.square)
    if c:
        t.check("backward", L.nilpotent, Phi=Phi, A2=L.square)
    if not c and not L.nilpotent:
        t.check("both_false", True)


def _lemma28_29(L: Landscape, t: Tally, key: str):
    if not L.finite:
        raise Skip("field unsupported: quotient reports need a prime field")
    X = L.need(key)[0]
    for N in L.proper_ideals:
        q, QL = L.quotient_landscape(N)
        XQ = getattr(QL.report, key)
        img = q.project_subspace(X)
        t.check("image_inside", img <= XQ, N=N)
        if N <= X:
            t.check("equality_when_inside", img == XQ, N=N)


def _prop30(L: Landscape, t: Tally):
    Phi = L.need("Phi")[0]
    t.check("phi_nilpotent", is_nilpotent(L.A, Phi), Phi=Phi)
    rep = L.report
    for key in ("nFrat", "R"):
        X = getattr(rep, key)
        if X is not None:
            t.notes.append(f"{key} nilpotent: {is_nilpotent(L.A, X)} (dim {X.dim})")


def _prop31(L: Landscape, t: Tally):
    Phi, nF, R = L.need("Phi", "nFrat", "R")
    t.check("phi_in_nfrat", Phi <= nF, Phi=Phi, nFrat=nF)
    t.check("nfrat_in_R", nF <= R, nFrat=nF, R=R)


def _prop32(L: Landscape, t: Tally):
    if not L.solvable:
        raise Skip("precondition: A is not solvable")
    nF, R = L.need("nFrat", "R")
    t.check("R_eq_nfrat", R == nF, R=R, nFrat=nF)


def _thm34(L: Landscape, t: Tally):
    Phi, nF, R = L.need("Phi", "nFrat", "R")
    c = Phi == nF == R
    if L.nilpotent:
        t.check("forward", c)
    if c:
        t.check("backward", L.nilpotent)
    if not c and not L.nilpotent:
        t.check("both_false", True)


def _nongen(L: Landscape, t: Tally, key: str, fn):
    if not L.finite:
        raise Skip("field unsupported: element enumeration needs a prime field")
    X = L.need(key)[0]
    try:
        got = fn(L.A, L.budget)
    except BudgetExceeded as exc:
        raise Skip(f"budget: {exc}")
    want = element_set(X)
    t.check("set_equality", got == want, extra=len(got - want), missing=len(want - got))


def _lemma37(L: Landscape, t: Tally, pair_limit: int = 1000):
    A = L.A
    F = A.field
    if F.is_finite and F.p ** A.dim <= L.budget.max_elements:
        elems = list(F.vectors(A.dim))
        subsets = [[]] + [[y] for y in elems]
        pairs = [(x, X) for x in elems for X in subsets]
        if len(pairs) > pair_limit:
            pairs = random.Random(L.seed).sample(pairs, pair_limit)
            t.partial = True
    else:
        basis = A.basis()
        sample = basis + [tuple(F.red(a + b) for a, b in zip(u, v)) for u, v in itertools.combinations(basis, 2)]
        pairs = [(x, X) for x in sample for X in ([], *[[y] for y in sample], basis[:2])]
        t.partial = True
    for x, X in pairs:
        t.check("triple_equality", lemma37_check(A, x, X), x=x, X=X)


STATEMENTS = {
    "Prop1": _prop1,
    "Cor2": _cor2,
    "Lemma3": _lemma3,
    "Thm4": _thm4,
    "Cor5": _cor5,
    "Cor6": _cor6,
    "Thm7": _thm7,
    "Thm9": _thm9,
    "Prop10": _prop10,
    "Cor11": _cor11,
    "Prop13": _prop13,
    "Cor14": _cor14,
    "Thm16": _thm16,
    "Lemma18": _lemma18,
    "Prop19": _prop19,
    "Thm20": _thm20,
    "Cor21": _cor21,
    "Lemma22": _lemma22,
    "Prop23": _prop23,
    "Prop24": lambda L, t: _prop24_25(L, t, "tau"),
    "Prop25": lambda L, t: _prop24_25(L, t, "zstar"),
    "Thm26": _thm26,
    "Cor27": _cor27,
    "Lemma28": lambda L, t: _lemma28_29(L, t, "F"),
    "Lemma29": lambda L, t: _lemma28_29(L, t, "nFrat"),
    "Prop30": _prop30,
    "Prop31": _prop31,
    "Prop32": _prop32,
    "Thm34": _thm34,
    "Prop35": lambda L, t: _nongen(L, t, "F", nongenerators),
    "Prop36": lambda L, t: _nongen(L, t, "R", normal_nongenerators),
    "Lemma37": _lemma37,
    "Prop38": lambda L, t: _nongen(L, t, "nFrat", n_nongenerators),
}


def _serialize_witness(A: LeibnizAlgebra, w: dict | None) -> dict | None:
    if w is None:
        return None
    out = {}
    for k, v in w.items():
        if isinstance(v, Subspace):
            out[k] = A.fmt_subspace(v)
        elif isinstance(v, tuple):
            out[k] = A.fmt_vector(v)
        elif isinstance(v, list):
            out[k] = [A.fmt_vector(x) if isinstance(x, tuple) else x for x in v]
        else:
            out[k] = v
    return out


def check(statement_id: str, A: LeibnizAlgebra | Landscape, budget: EnumBudget = DEFAULT_BUDGET,
          seed: int = 0, name: str = "") -> CheckResult:
    if statement_id not in STATEMENTS:
        raise KeyError(f"unknown statement {statement_id!r}")
    L = A if isinstance(A, Landscape) else Landscape(A, name, budget, seed)
    t = Tally()
    start = time.perf_counter()
    reason = None
    try:
        STATEMENTS[statement_id](L, t)
    except Skip as exc:
        reason = str(exc)
    except (BudgetExceeded, WrongField, UnsupportedField, NilUnavailable) as exc:
        reason = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    fails = [p for p, v in t.parts.items() if v == "fail"]
    if fails:
        verdict = "fail"
    elif t.instances and reason is None:
        verdict = "pass"
    else:
        verdict = "skipped"
        reason = reason or "no instance instantiated"
    return CheckResult(
        statement_id, L.name, verdict, reason if verdict == "skipped" else None,
        _serialize_witness(L.A, t.witness), elapsed, t.instances, dict(t.parts),
        t.partial or (L.ideals_partial and verdict != "skipped"), t.findings, t.notes,
    )


def convention_findings(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET) -> list[str]:
    """Places where the left-only lower central series or the left center would change a result."""
    out = []
    if lower_central(A) != lower_central_left(A):
        out.append("left-only lower central series differs from the two-sided one")
    lc = left_center(A)
    if lc != center(A):
        msg = f"left center (dim {lc.dim}) differs from the two-sided center (dim {center(A).dim})"
        if is_ideal(A, lc) and not lc.is_full() and A.field.is_finite:
            v = is_generalized_frattini(A, lc, "nil_pullback", budget)
            msg += f"; left center is an ideal, generalized Frattini: {v.holds}"
        elif not is_ideal(A, lc):
            msg += "; left center is not an ideal"
        out.append(msg)
    return out


def run_suite(corpus, statements=None, budget: EnumBudget = DEFAULT_BUDGET, seed: int = 0):
    """Cross product corpus x statements, ordered by (registry position, corpus index).

    ``corpus`` holds catalog entries or ``(name, algebra)`` pairs.
    Returns ``(results, summary)``.
    """
    statements = list(statements) if statements else list(STATEMENTS)
    results = []
    conventions = {}
    for item in corpus:
        if hasattr(item, "algebra"):
            name, A = item.label, item.algebra
            hints = [v for a in item.asserted.values() for v in (a.value if isinstance(a.value, list) else [a.value])
                     if isinstance(v, Subspace)]
        else:
            name, A = item
            hints = []
        L = Landscape(A, name, budget, seed, hints)
        for sid in statements:
            results.append(check(sid, L))
        found = convention_findings(A, budget)
        if found:
            conventions[name] = found
    results.sort(key=lambda r: list(STATEMENTS).index(r.statement_id))
    per = {}
    for sid in statements:
        c = Counter(r.verdict for r in results if r.statement_id == sid)
        per[sid] = {"pass": c["pass"], "fail": c["fail"], "skipped": c["skipped"]}
    totals = Counter(r.verdict for r in results)
    summary = {
        "algebras": len(corpus),
        "statements": statements,
        "per_statement": per,
        "totals": {"pass": totals["pass"], "fail": totals["fail"], "skipped": totals["skipped"]},
        "findings": sum(len(r.findings) for r in results),
        "convention_findings": conventions,
        "seed": seed,
        "budget": {"max_subspaces": budget.max_subspaces, "max_elements": budget.max_elements},
    }
    return results, summary
