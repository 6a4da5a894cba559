"""Frattini-type subalgebras and ideals, generalized Frattini tests,
primitive ideals and non-generator sets.

Over prime fields everything is read off the exhaustive lattice.  Over Q
only certified shortcuts are used (nilpotent or provably simple algebras),
or caller-asserted values that get verified; anything else raises.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import reduce

from .algebra import (
    LeibnizAlgebra,
    as_algebra,
    center,
    derived_series,
    ideal_closure,
    is_ideal,
    is_nilpotent,
    is_solvable,
    lower_central,
    normalizer,
    product_space,
    quotient,
    subalgebra_closure,
    upper_central,
)
from .engel import CartanSearchFailed, engel_subalgebra, find_cartan
from .exactlin import Matrix, Subspace, Vector, preimage, quotient_basis, vcomb
from .lattice import DEFAULT_BUDGET, BudgetExceeded, EnumBudget, WrongField, cartan_subalgebras_of, lattice_report


class NotProperIdeal(ValueError):
    pass


class NilUnavailable(RuntimeError):
    pass


class UnsupportedField(RuntimeError):
    pass


class CandidateRejected(ValueError):
    pass


def ideal_core(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    """Largest ideal of A inside S."""
    lefts, rights = A._basis_ops
    maps = list(lefts) + list(rights)
    W = S
    while True:
        W2 = W & preimage(maps, W, A.field, A.dim)
        if W2 == W:
            return W
        W = W2


def _meet(spaces, default: Subspace) -> Subspace:
    return reduce(lambda a, b: a & b, spaces, default)


def _join(spaces, default: Subspace) -> Subspace:
    return reduce(lambda a, b: a + b, spaces, default)


# ---------------------------------------------------------------------------
# simplicity over Q
# ---------------------------------------------------------------------------


def generated_algebra_dim(F, n: int, gens) -> int:
    """Dimension of the unital associative algebra generated by n x n matrices."""

    def flat(M: Matrix):
        return tuple(x for r in M.rows for x in r)

    def unflat(v):
        return Matrix(F, tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)

    W = Subspace.span(F, n * n, [flat(Matrix.identity(F, n))] + [flat(g) for g in gens])
    while True:
        new = [flat(unflat(w) @ g) for w in W.basis for g in gens]
        W2 = Subspace.span(F, n * n, list(W.basis) + new)
        if W2 == W:
            return W.dim
        W = W2


def multiplication_algebra_dim(A: LeibnizAlgebra) -> int:
    """Dimension of the unital associative algebra generated by all L_x, R_x."""
    lefts, rights = A._basis_ops
    return generated_algebra_dim(A.field, A.dim, list(lefts) + list(rights))


def certify_simple(A: LeibnizAlgebra) -> bool:
    """True only when A provably has no ideals besides 0 and A and A A != 0.

    The certificate is that the multiplication algebra is all of End(A), so
    no proper nonzero subspace is invariant under every L_x and R_x.  Each
    basis vector is also probed to generate A as an ideal.
    """
    if A.dim == 0 or A.is_abelian():
        return False
    if A.field.is_finite:
        lat = lattice_report(A)
        return len(lat.ideals) == 2
    if multiplication_algebra_dim(A) != A.dim ** 2:
        return False
    return all(ideal_closure(A, [e]).is_full() for e in A.basis())


# ---------------------------------------------------------------------------
# nilradical and radical
# ---------------------------------------------------------------------------

MODES = ("exhaustive", "certified", "asserted", "heuristic")


def _height_vectors(k: int, height: int, limit: int):
    rng = range(-height, height + 1)
    count = 0
    for coeffs in itertools.product(rng, repeat=k):
        if any(coeffs):
            yield coeffs
            count += 1
            if count >= limit:
                return


def _nil_heuristic(A: LeibnizAlgebra, height: int = 3, limit: int = 3000) -> Subspace:
    full = A.full()
    sq = product_space(A, full, full)
    N = sq if is_nilpotent(A, sq) else A.zero_space()
    reps = quotient_basis(full, sq)
    cands = list(reps)
    for coeffs in _height_vectors(len(reps), height, limit):
        cands.append(vcomb(A.field, [A.field(c) for c in coeffs], reps, A.dim))
    for x in cands:
        if N.contains(x):
            continue
        M = N + ideal_closure(A, [x])
        if is_nilpotent(A, M):
            N = M
    return N


def resolve_nil(A: LeibnizAlgebra, mode: str | None = None, candidate: Subspace | None = None,
                budget: EnumBudget = DEFAULT_BUDGET) -> tuple[Subspace, str]:
    """Nil(A) together with the mode that produced it."""
    if mode is None:
        if candidate is not None:
            mode = "asserted"
        elif A.field.is_finite:
            mode = "exhaustive"
        elif is_nilpotent(A):
            return A.full(), "certified"
        elif certify_simple(A):
            return A.zero_space(), "certified"
        elif is_solvable(A):
            mode = "heuristic"
        else:
            raise NilUnavailable(f"no certified nilradical route for this algebra over {A.field}")
    if mode == "exhaustive":
        if not A.field.is_finite:
            raise NilUnavailable("exhaustive mode needs a prime field")
        lat = lattice_report(A, budget)
        N = _join([I for I in lat.ideals if is_nilpotent(A, I)], A.zero_space())
        assert is_nilpotent(A, N), "sum of nilpotent ideals must be nilpotent"
        return N, mode
    if mode == "asserted":
        if candidate is None or not is_ideal(A, candidate) or not is_nilpotent(A, candidate):
            raise CandidateRejected("asserted nilradical is not a nilpotent ideal")
        return candidate, mode
    if mode == "heuristic":
        if A.field.is_finite or not is_solvable(A):
            raise NilUnavailable("heuristic nilradical needs a solvable algebra in characteristic 0")
        return _nil_heuristic(A), mode
    raise ValueError(f"unknown mode {mode!r}")


def resolve_rad(A: LeibnizAlgebra, mode: str | None = None, candidate: Subspace | None = None,
                budget: EnumBudget = DEFAULT_BUDGET) -> tuple[Subspace, str]:
    if mode is None:
        if candidate is not None:
            mode = "asserted"
        elif A.field.is_finite:
            mode = "exhaustive"
        elif is_solvable(A):
            return A.full(), "certified"
        elif certify_simple(A):
            return A.zero_space(), "certified"
        else:
            raise NilUnavailable(f"no certified radical route for this algebra over {A.field}")
    if mode == "exhaustive":
        if not A.field.is_finite:
            raise NilUnavailable("exhaustive mode needs a prime field")
        lat = lattice_report(A, budget)
        R = _join([I for I in lat.ideals if is_solvable(A, I)], A.zero_space())
        assert is_solvable(A, R)
        return R, mode
    if mode == "asserted":
        if candidate is None or not is_ideal(A, candidate) or not is_solvable(A, candidate):
            raise CandidateRejected("asserted radical is not a solvable ideal")
        return candidate, mode
    if mode == "heuristic":
        if not is_solvable(A):
            raise NilUnavailable("heuristic radical only covers solvable algebras")
        return A.full(), "certified"
    raise ValueError(f"unknown mode {mode!r}")


def nil(A: LeibnizAlgebra, mode: str | None = None, candidate: Subspace | None = None,
        budget: EnumBudget = DEFAULT_BUDGET) -> Subspace:
    return resolve_nil(A, mode, candidate, budget)[0]


def rad(A: LeibnizAlgebra, mode: str | None = None, candidate: Subspace | None = None,
        budget: EnumBudget = DEFAULT_BUDGET) -> Subspace:
    return resolve_rad(A, mode, candidate, budget)[0]


# ---------------------------------------------------------------------------
# the Frattini landscape
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrattiniReport:
    F: Subspace | None
    Phi: Subspace | None
    R: Subspace | None
    T: Subspace | None
    tau: Subspace | None
    nFrat: Subspace | None
    Nil: Subspace | None
    Rad: Subspace | None
    mode: str
    nil_mode: str
    maximal_subalgebras: tuple = ()
    maximal_ideals: tuple = ()

    @property
    def complete(self) -> bool:
        return all(getattr(self, k) is not None for k in ("F", "Phi", "R", "T", "tau", "nFrat", "Nil", "Rad"))


def _report_exhaustive(A: LeibnizAlgebra, budget: EnumBudget) -> FrattiniReport:
    lat = lattice_report(A, budget)
    full = A.full()
    ideals = set(lat.ideals)
    maxs = lat.maximal_subalgebras
    F = _meet(maxs, full)
    R = _meet([M for M in maxs if M in ideals], full)
    T = _meet([M for M in maxs if M not in ideals], full)
    nF = _meet(lat.maximal_ideals, full)
    N, _ = resolve_nil(A, "exhaustive", budget=budget)
    Rd, _ = resolve_rad(A, "exhaustive", budget=budget)
    return FrattiniReport(F, ideal_core(A, F), R, T, ideal_core(A, T), nF, N, Rd,
                          "exhaustive", "exhaustive", maxs, lat.maximal_ideals)


def frattini_report(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET,
                    asserted: dict | None = None) -> FrattiniReport:
    """All eight subspaces, by the strongest route available for A's field.

    Prime fields: exhaustive.  Over Q: nilpotent algebras (every maximal
    subalgebra is a codimension-one ideal over A^2) and certified simple
    ones; otherwise ``asserted`` must supply the values, each re-verified.
    """
    if A.field.is_finite:
        return _report_exhaustive(A, budget)
    full = A.full()
    zero = A.zero_space()
    if is_nilpotent(A):
        sq = product_space(A, full, full)
        return FrattiniReport(sq, sq, sq, full, full, sq, full, full, "certified", "certified")
    if certify_simple(A):
        # only ideals are 0 and A; no maximal subalgebra is an ideal, so T = F and tau = Phi = 0
        return FrattiniReport(None, zero, full, None, zero, zero, zero, zero, "certified", "certified")
    if asserted:
        vals = {k: asserted.get(k) for k in ("F", "Phi", "R", "T", "tau", "nFrat", "Nil", "Rad")}
        for k in ("Phi", "R", "tau", "nFrat", "Nil", "Rad"):
            if vals[k] is not None and not is_ideal(A, vals[k]):
                raise CandidateRejected(f"asserted {k} is not an ideal")
        if vals["Nil"] is not None:
            resolve_nil(A, "asserted", vals["Nil"])
        if vals["Rad"] is not None:
            resolve_rad(A, "asserted", vals["Rad"])
        return FrattiniReport(**vals, mode="asserted", nil_mode="asserted")
    raise UnsupportedField(f"no certified Frattini route for this algebra over {A.field}")


# ---------------------------------------------------------------------------
# generalized Frattini ideals
# ---------------------------------------------------------------------------

GENFRAT_METHODS = ("nil_pullback", "theorem7_exhaustive", "definition_cartan", "theorem16_engel")


@dataclass
class GenFratVerdict:
    holds: bool
    method: str
    witness: dict | None = None
    partial: bool = False
    mode: str = "exhaustive"
    notes: list = field(default_factory=list)


def _check_proper_ideal(A: LeibnizAlgebra, H: Subspace):
    if not is_ideal(A, H):
        from .algebra import NotAnIdeal

        raise NotAnIdeal("H must be a two-sided ideal")
    if H.is_full():
        raise NotProperIdeal("a generalized Frattini ideal must be proper")


def candidate_ideals(A: LeibnizAlgebra, extra=()) -> list[Subspace]:
    """Ideals computable without enumeration, for use over Q."""
    out = [A.zero_space(), A.full()]
    out += lower_central(A) + derived_series(A) + upper_central(A)
    out.append(center(A))
    out += [I for I in extra if is_ideal(A, I)]
    seen = []
    for I in out:
        if I not in seen:
            seen.append(I)
    return sorted(seen, key=lambda s: s.sort_key())


def _cartans_of(A: LeibnizAlgebra, K: Subspace, budget: EnumBudget, seed: int) -> tuple[list[Subspace], bool]:
    """Cartan subalgebras of the ideal K: all of them over GF(p), found ones over Q."""
    if A.field.is_finite:
        return cartan_subalgebras_of(A, K, budget), True
    if K.is_zero():
        return [K], True
    emb = as_algebra(A, K)
    try:
        res = find_cartan(emb.algebra, seed=seed)
    except CartanSearchFailed:
        return [], False
    return [emb.embed_subspace(res.cartan)], False


def _engel_pool(A: LeibnizAlgebra, C: Subspace, budget: EnumBudget, seed: int):
    if A.field.is_finite and A.field.p ** C.dim <= budget.max_elements:
        return list(C.elements()), True
    rng = random.Random(seed)
    pool = list(C.basis)
    pool += [tuple(A.field.red(a + b) for a, b in zip(u, v)) for u, v in itertools.combinations(C.basis, 2)]
    for _ in range(16):
        if not C.basis:
            break
        coeffs = [A.field(rng.randint(-7, 7)) for _ in C.basis]
        pool.append(vcomb(A.field, coeffs, C.basis, A.dim))
    return pool, False


def is_generalized_frattini(A: LeibnizAlgebra, H: Subspace, method: str = "nil_pullback",
                            budget: EnumBudget = DEFAULT_BUDGET, seed: int = 0,
                            ideals_hint=()) -> GenFratVerdict:
    _check_proper_ideal(A, H)
    if method == "nil_pullback":
        Q = quotient(A, H)
        try:
            Nbar, mode = resolve_nil(Q.algebra, budget=budget)
        except NilUnavailable as exc:
            raise NilUnavailable(f"Nil(A/H) unavailable: {exc}") from exc
        B = Q.preimage(Nbar)
        ok = is_nilpotent(A, B)
        return GenFratVerdict(ok, method, None if ok else {"J": B}, partial=mode == "heuristic", mode=mode)

    if method == "theorem7_exhaustive":
        if not A.field.is_finite:
            raise WrongField("theorem7_exhaustive needs a prime field")
        for J in lattice_report(A, budget).ideals:
            if H <= J and is_nilpotent(A, J, mod=H) and not is_nilpotent(A, J):
                return GenFratVerdict(False, method, {"J": J})
        return GenFratVerdict(True, method)

    if method in ("definition_cartan", "theorem16_engel"):
        finite = A.field.is_finite
        ideals = lattice_report(A, budget).ideals if finite else candidate_ideals(A, ideals_hint)
        complete = finite
        for K in ideals:
            cartans, all_found = _cartans_of(A, K, budget, seed)
            complete = complete and all_found
            for C in cartans:
                if method == "definition_cartan":
                    N = normalizer(A, C)
                    if (H + N).is_full() and not N.is_full():
                        return GenFratVerdict(False, method, {"K": K, "C": C},
                                              partial=not finite, mode="exhaustive" if finite else "partial")
                else:
                    pool, exhaustive_pool = _engel_pool(A, C, budget, seed)
                    complete = complete and exhaustive_pool
                    engels = [engel_subalgebra(A, c) for c in pool]
                    if all((H + E).is_full() for E in engels) and not all(E.is_full() for E in engels):
                        return GenFratVerdict(False, method, {"K": K, "C": C},
                                              partial=True, mode="partial")
        return GenFratVerdict(True, method, partial=not complete,
                              mode="exhaustive" if complete else "partial")
    raise ValueError(f"unknown method {method!r}")


def validate_genfrat_witness(A: LeibnizAlgebra, H: Subspace, verdict: GenFratVerdict) -> bool:
    """Re-check a failing verdict's witness through public operations."""
    if verdict.holds:
        return verdict.witness is None
    w = verdict.witness or {}
    if "J" in w:
        J = w["J"]
        return is_ideal(A, J) and H <= J and is_nilpotent(A, J, mod=H) and not is_nilpotent(A, J)
    if "K" in w and "C" in w:
        K, C = w["K"], w["C"]
        N = normalizer(A, C)
        if not (is_ideal(A, K) and C <= K and is_nilpotent(A, C) and (normalizer(A, C) & K) == C):
            return False
        if verdict.method == "definition_cartan":
            return (H + N).is_full() and not N.is_full()
        return True
    return False


# ---------------------------------------------------------------------------
# primitive ideals
# ---------------------------------------------------------------------------


@dataclass
class PrimitiveVerdict:
    is_primitive: bool
    phi_quotient_zero: bool | None
    unique_minimal: bool
    dim_ok: bool
    minimal_ideal_B: Subspace | None = None
    mode: str = "exhaustive"


def _restricted(A: LeibnizAlgebra, B: Subspace, M: Matrix) -> Matrix:
    """Matrix of M restricted to the invariant subspace B, in B's coordinates."""
    cols = [B.coordinates(M.apply(b)) for b in B.basis]
    return Matrix.from_columns(A.field, cols, B.dim)


def is_minimal_ideal_certified(A: LeibnizAlgebra, B: Subspace) -> bool:
    """B is a nonzero ideal with no proper nonzero ideal of A inside it.

    Lines are automatic; otherwise all L_x, R_x restricted to B must
    generate End(B), which leaves no invariant proper subspace.
    """
    if B.is_zero() or not is_ideal(A, B):
        return False
    if B.dim == 1:
        return True
    lefts, rights = A._basis_ops
    gens = [_restricted(A, B, M) for M in list(lefts) + list(rights)]
    return generated_algebra_dim(A.field, B.dim, gens) == B.dim ** 2


def annihilator(A: LeibnizAlgebra, B: Subspace) -> Subspace:
    """{x : xB = Bx = 0}."""
    lefts = [A.left_op(b) for b in B.basis]
    rights = [A.right_op(b) for b in B.basis]
    return preimage(lefts + rights, A.zero_space(), A.field, A.dim)


def _codim_one_subalgebra_omitting(A: LeibnizAlgebra, B: Subspace, seed: int = 0, tries: int = 200):
    """A codimension-one subalgebra (hence maximal) not containing B, or None."""
    rng = random.Random(seed)
    F = A.field
    basis = A.basis()
    pool = list(basis) + [vcomb(F, [F.one, F.one], [u, v], A.dim) for u, v in itertools.combinations(basis, 2)]
    pool += [vcomb(F, [F(rng.randint(-3, 3)) for _ in basis], basis, A.dim) for _ in range(tries)]
    seeds = []
    for x in pool:
        if any(x):
            seeds.append(engel_subalgebra(A, x))
            seeds.append(subalgebra_closure(A, [x]))
    for S in seeds:
        if S.is_full() or B <= S:
            continue
        for v in pool:
            if S.dim == A.dim - 1:
                break
            if S.contains(v):
                continue
            T = subalgebra_closure(A, list(S.basis) + [v])
            if not T.is_full() and not B <= T:
                S = T
        if S.dim == A.dim - 1:
            return S
    return None


def _primitive_certified(Qa: LeibnizAlgebra, hints=()):
    """(phi0, minimal ideals found) over Q via explicit certificates."""
    cands = [I for I in candidate_ideals(Qa, hints) if is_minimal_ideal_certified(Qa, I)]
    if len(cands) >= 2:
        return None, cands
    for B in cands:
        if annihilator(Qa, B) <= B:
            # a nonzero ideal I missing B satisfies IB, BI in I & B = 0, so I lies in ann(B)
            S = _codim_one_subalgebra_omitting(Qa, B)
            if S is None:
                raise UnsupportedField("no maximal subalgebra omitting the minimal ideal found over Q")
            return True, [B]
    raise UnsupportedField("no certified unique minimal ideal for a non-nilpotent quotient over Q")


def is_primitive_ideal(A: LeibnizAlgebra, K: Subspace, budget: EnumBudget = DEFAULT_BUDGET,
                       hints=()) -> PrimitiveVerdict:
    """Primitivity of K; over Q the non-nilpotent case needs an explicit certificate.

    ``hints`` are ideals of A/K (in quotient coordinates) offered as minimal
    ideal candidates.
    """
    _check_proper_ideal(A, K)
    Q = quotient(A, K)
    Qa = Q.algebra
    dim_ok = Qa.dim > 1
    mode = "exhaustive"
    if Qa.field.is_finite:
        rep = frattini_report(Qa, budget)
        mins = lattice_report(Qa, budget).minimal_ideals
        phi0 = rep.Phi.is_zero()
    elif is_nilpotent(Qa):
        mode = "certified"
        full = Qa.full()
        phi0 = product_space(Qa, full, full).is_zero()
        Z = center(Qa)
        # minimal ideals of a nilpotent algebra are the central lines
        mins = [Z] if Z.dim == 1 else [None, None]
    else:
        mode = "certified"
        phi0, mins = _primitive_certified(Qa, hints)
    unique = len(mins) == 1
    B = Q.preimage(mins[0]) if unique else None
    return PrimitiveVerdict(bool(phi0) and unique and dim_ok, phi0, unique, dim_ok, B, mode)


# ---------------------------------------------------------------------------
# non-generators
# ---------------------------------------------------------------------------


def _elements_checked(A: LeibnizAlgebra, budget: EnumBudget):
    if not A.field.is_finite:
        raise WrongField("non-generator sets need a prime field")
    count = A.field.p ** A.dim
    if count > budget.max_elements:
        raise BudgetExceeded(count, budget.max_elements, "elements")
    return list(A.field.vectors(A.dim))


def _generator_filter(A: LeibnizAlgebra, family, closure, budget: EnumBudget) -> set:
    """Elements x with: closure(x, S) = A implies S = A, for S in family."""
    elems = _elements_checked(A, budget)
    proper = [S for S in family if not S.is_full()]
    cache: dict = {}
    out = set()
    for x in elems:
        ok = True
        for S in proper:
            if S.contains(x):
                continue
            key = (S + A.span([x]))
            gen = cache.get(key)
            if gen is None:
                gen = closure(list(S.basis) + [x]).is_full()
                cache[key] = gen
            if gen:
                ok = False
                break
        if ok:
            out.add(tuple(x))
    return out


def nongenerators(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET) -> set:
    lat = lattice_report(A, budget)
    return _generator_filter(A, lat.subalgebras, lambda S: subalgebra_closure(A, S), budget)


def normal_nongenerators(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET) -> set:
    # a normal subset generates an ideal and every ideal is a normal subset
    lat = lattice_report(A, budget)
    return _generator_filter(A, lat.ideals, lambda S: subalgebra_closure(A, S), budget)


def n_nongenerators(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET) -> set:
    # <x, X>^A depends on X only through X^A, so X ranges over ideals
    lat = lattice_report(A, budget)
    return _generator_filter(A, lat.ideals, lambda S: ideal_closure(A, S), budget)


def element_set(U: Subspace) -> set:
    return {tuple(v) for v in U.elements()}


def lemma37_check(A: LeibnizAlgebra, x: Vector, X) -> bool:
    """<x,X>^A, <x^A, X^A> and x^A + X^A computed independently and compared."""
    X = list(X)
    lhs = ideal_closure(A, subalgebra_closure(A, [x] + X).basis)
    xa = ideal_closure(A, [x])
    Xa = ideal_closure(A, X)
    mid = subalgebra_closure(A, list(xa.basis) + list(Xa.basis))
    rhs = xa + Xa
    return lhs == mid == rhs
