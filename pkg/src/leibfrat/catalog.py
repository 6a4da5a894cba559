"""Built-in algebras, parametric families and seeded random generators.

Each entry may carry asserted invariants tagged ``PAPER`` (stated in the
source worked examples) or ``DERIVED`` (hand computation).  ``verify_entry``
re-checks every assertion against the definitions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import (
    LeibnizAlgebra,
    center,
    construct,
    derivations,
    is_ideal,
    is_nilpotent,
    is_solvable,
    leibniz_violation,
    product_space,
    quotient,
)
from .exactlin import QQ, Field, Matrix, Subspace, vcomb


class GenerationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class Asserted:
    value: object
    provenance: str  # "PAPER" or "DERIVED"
    note: str = ""


@dataclass
class CatalogEntry:
    name: str
    params: dict
    algebra: LeibnizAlgebra
    asserted: dict = field(default_factory=dict)
    flags: tuple = ()

    @property
    def label(self) -> str:
        return f"{self.name}[{self.algebra.field}]"


def _span(A: LeibnizAlgebra, *vectors) -> Subspace:
    return A.span(vectors)


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------


def example8(F: Field = QQ) -> CatalogEntry:
    """Basis x, y, z with xz = x = -zx, zy = y = -yz, xy = yx = 0."""
    A = construct(F, 3, [(0, 2, {0: 1}), (2, 0, {0: -1}), (2, 1, {1: 1}), (1, 2, {1: -1})], ["x", "y", "z"])
    x, y, _ = A.basis()
    H, K = _span(A, x), _span(A, y)
    asserted = {
        "genfrat": Asserted([H, K], "PAPER", "H=(x) and K=(y) are generalized Frattini"),
        "not_genfrat": Asserted([H + K], "PAPER", "H+K is not generalized Frattini"),
        "Nil": Asserted(H + K, "PAPER", "Nil(A) = H + K"),
        "solvable": Asserted(True, "PAPER", "A is solvable"),
        "nilpotent": Asserted(False, "DERIVED", "z acts with eigenvalues -1, 1"),
    }
    flags = ("char2",) if F.p == 2 else ()
    return CatalogEntry("example8", {"field": str(F)}, A, asserted, flags)


def cyclic_leibniz(F: Field, n: int, coeffs) -> CatalogEntry:
    """Cyclic algebra on a, a^2, .., a^n: a a^i = a^{i+1}, a a^n = sum coeffs[i] a^{i+1}."""
    coeffs = list(coeffs)
    if len(coeffs) != n:
        raise ValueError(f"need {n} coefficients")
    if F(coeffs[0]):
        raise ValueError("a a^n may not have an a-component")
    names = ["a"] + [f"a{i}" for i in range(2, n + 1)]
    prods = [(0, i, {i + 1: 1}) for i in range(n - 1)]
    prods.append((0, n - 1, {k: c for k, c in enumerate(coeffs) if c}))
    A = construct(F, n, prods, names)
    return CatalogEntry("cyclic", {"field": str(F), "n": n, "coeffs": [str(c) for c in coeffs]}, A)


def example17(F: Field = QQ) -> CatalogEntry:
    """Three-dimensional cyclic algebra with a a^3 = a^2."""
    e = cyclic_leibniz(F, 3, [0, 1, 0])
    A = e.algebra
    a, a2, a3 = A.basis()
    neg = F(-1)
    K = _span(A, (0, 1, 1))
    e.name = "example17"
    e.asserted = {
        "ideal_K": Asserted(K, "PAPER", "K = (a^2 + a^3) is an ideal"),
        "primitive": Asserted([K], "PAPER", "K is a primitive ideal"),
        "genfrat": Asserted([K], "PAPER", "K is generalized Frattini (proper subalgebra of Nil)"),
        "cartan": Asserted(_span(A, (1, 0, neg)), "DERIVED", "span{a - a^3}"),
        "Nil": Asserted(_span(A, a2, a3), "DERIVED", "span{a^2, a^3}"),
        "minpoly_quotient": Asserted((0, 1), "PAPER", "minimum polynomial of L_a on A/K is x(x+1)"),
        "solvable": Asserted(True, "DERIVED", ""),
        "nilpotent": Asserted(False, "DERIVED", ""),
    }
    return e


def heisenberg(F: Field = QQ) -> CatalogEntry:
    A = construct(F, 3, [(0, 1, {2: 1}), (1, 0, {2: -1})], ["e", "f", "h"])
    h = _span(A, A.e(2))
    return CatalogEntry("heisenberg", {"field": str(F)}, A, {
        "Phi": Asserted(h, "DERIVED", "Phi = A^2 = Z(A) = span{h}"),
        "square": Asserted(h, "DERIVED", ""),
        "center": Asserted(h, "DERIVED", ""),
        "nilpotent": Asserted(True, "DERIVED", ""),
    })


def abelian(F: Field, n: int) -> CatalogEntry:
    A = construct(F, n, [], [f"v{i + 1}" for i in range(n)])
    return CatalogEntry(f"abelian{n}", {"field": str(F), "n": n}, A, {
        "center": Asserted(A.full(), "DERIVED", ""),
        "Phi": Asserted(A.zero_space(), "DERIVED", ""),
        "nilpotent": Asserted(True, "DERIVED", ""),
    })


def direct_sum(e1: CatalogEntry, e2: CatalogEntry) -> CatalogEntry:
    A, B = e1.algebra, e2.algebra
    if A.field != B.field:
        raise ValueError("direct sum needs a common field")
    n, m = A.dim, B.dim
    names = list(A.names) + [nm if nm not in A.names else nm + "'" for nm in B.names]
    prods = []
    for i in range(n):
        for j in range(n):
            w = A.table[i][j]
            if any(w):
                prods.append((i, j, {k: c for k, c in enumerate(w) if c}))
    for i in range(m):
        for j in range(m):
            w = B.table[i][j]
            if any(w):
                prods.append((n + i, n + j, {n + k: c for k, c in enumerate(w) if c}))
    S = construct(A.field, n + m, prods, names)
    return CatalogEntry(f"{e1.name}+{e2.name}", {"field": str(A.field), "summands": [e1.name, e2.name]}, S)


# ---------------------------------------------------------------------------
# matrix Lie algebras
# ---------------------------------------------------------------------------


def _bracket_table(F: Field, n: int, basis, coords):
    def mat_mul(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    prods = []
    for a, X in enumerate(basis):
        for b, Y in enumerate(basis):
            XY, YX = mat_mul(X, Y), mat_mul(Y, X)
            M = [[XY[i][j] - YX[i][j] for j in range(n)] for i in range(n)]
            c = coords(M)
            if any(c):
                prods.append((a, b, {k: v for k, v in enumerate(c) if v}))
    return prods


def _unit_matrix(n, i, j):
    return [[1 if (r, s) == (i, j) else 0 for s in range(n)] for r in range(n)]


def gl(F: Field, n: int) -> CatalogEntry:
    basis = [_unit_matrix(n, i, j) for i in range(n) for j in range(n)]
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    A = construct(F, n * n, _bracket_table(F, n, basis, lambda M: [M[i][j] for i in range(n) for j in range(n)]), names)
    scalars = A.span([tuple(F(1) if i == j else F(0) for i in range(n) for j in range(n))])
    asserted = {}
    if not F.is_finite:
        asserted = {
            "center": Asserted(scalars, "PAPER", "Z(gl(n)) = scalars"),
            "Nil": Asserted(scalars, "PAPER", "Nil(A) = Rad(A) = Z(A)"),
            "Rad": Asserted(scalars, "PAPER", "Nil(A) = Rad(A) = Z(A)"),
        }
    return CatalogEntry(f"gl{n}", {"field": str(F), "n": n}, A, asserted)


def sl(F: Field, n: int) -> CatalogEntry:
    basis, names = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(_unit_matrix(n, i, j))
                names.append(f"E{i + 1}{j + 1}")
    for k in range(n - 1):
        H = _unit_matrix(n, k, k)
        H[k + 1][k + 1] = -1
        basis.append(H)
        names.append(f"H{k + 1}")

    def coords(M):
        off = [M[i][j] for i in range(n) for j in range(n) if i != j]
        diag, run = [], 0
        for k in range(n - 1):
            run += M[k][k]
            diag.append(run)
        return off + diag

    A = construct(F, len(basis), _bracket_table(F, n, basis, coords), names)
    asserted = {}
    if not F.is_finite and n == 2:
        asserted = {
            "simple": Asserted(True, "PAPER", "sl(2,F) is simple"),
            "nFrat": Asserted(A.zero_space(), "PAPER", "nFrat(A) = 0"),
            "R": Asserted(A.full(), "PAPER", "R(A) = A"),
        }
    return CatalogEntry(f"sl{n}", {"field": str(F), "n": n}, A, asserted)


def matrix_algebras(F: Field, n: int) -> tuple[CatalogEntry, CatalogEntry]:
    if n < 2:
        raise ValueError("n >= 2")
    return gl(F, n), sl(F, n)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _extension(base: LeibnizAlgebra, D: Matrix) -> LeibnizAlgebra | None:
    """base + span{z} with z n = D(n), n z = -D(n), z z = 0; None if not Leibniz."""
    F = base.field
    n = base.dim
    table = [[list(base.table[i][j]) + [F.zero] for j in range(n)] + [None] for i in range(n)] + [[None] * (n + 1)]
    for i in range(n):
        d = D.column(i)
        table[n][i] = tuple(d) + (F.zero,)
        table[i][n] = tuple(F.red(-x) for x in d) + (F.zero,)
        for j in range(n):
            table[i][j] = tuple(table[i][j])
    table[n][n] = F.zero_vector(n + 1)
    frozen = tuple(tuple(row) for row in table)
    if leibniz_violation(F, n + 1, frozen) is not None:
        return None
    return LeibnizAlgebra(F, n + 1, frozen, tuple(base.names) + ("z",))


def random_extension(F: Field, base: CatalogEntry, seed: int, derivation: Matrix | None = None,
                     retries: int = 32) -> CatalogEntry:
    """Semidirect-style extension of a nilpotent base by a seeded derivation."""
    B = base.algebra
    if B.field != F:
        raise ValueError("base must live over the requested field")
    if not is_nilpotent(B):
        raise ValueError("base must be nilpotent")
    params = {"field": str(F), "base": base.name, "seed": seed}
    if derivation is not None:
        A = _extension(B, derivation)
        if A is None:
            raise GenerationFailed("given derivation does not give a Leibniz algebra")
        return CatalogEntry(f"ext({base.name})", params, A)
    ders = derivations(B)
    rng = random.Random(seed)
    for _ in range(retries):
        if F.is_finite:
            coeffs = [rng.randrange(F.p) for _ in ders]
        else:
            coeffs = [rng.randint(-3, 3) for _ in ders]
        flat = vcomb(F, [F(c) for c in coeffs], [tuple(x for r in D.rows for x in r) for D in ders], B.dim ** 2)
        D = Matrix(F, tuple(tuple(flat[k * B.dim:(k + 1) * B.dim]) for k in range(B.dim)), B.dim)
        A = _extension(B, D)
        if A is not None:
            return CatalogEntry(f"ext({base.name})#{seed}", params, A)
    raise GenerationFailed(f"no valid extension after {retries} draws")


def exhaustive_dim2(p: int) -> list[CatalogEntry]:
    """Every Leibniz structure tensor on GF(p)^2 (not up to isomorphism)."""
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    F = Field(p)
    out = []
    for idx, flat in enumerate(itertools.product(range(p), repeat=8)):
        table = tuple(tuple(tuple(flat[(2 * i + j) * 2:(2 * i + j) * 2 + 2]) for j in range(2)) for i in range(2))
        if leibniz_violation(F, 2, table) is None:
            A = LeibnizAlgebra(F, 2, table, ("u", "v"))
            out.append(CatalogEntry(f"dim2_{p}_{idx}", {"field": str(F), "index": idx}, A))
    return out


# ---------------------------------------------------------------------------
# registry and corpora
# ---------------------------------------------------------------------------

NAMED = {
    "example8": (lambda F: example8(F), QQ),
    "example17": (lambda F: example17(F), QQ),
    "heisenberg": (lambda F: heisenberg(F), QQ),
    "abelian1": (lambda F: abelian(F, 1), QQ),
    "abelian2": (lambda F: abelian(F, 2), Field(2)),
    "abelian3": (lambda F: abelian(F, 3), Field(2)),
    "gl2": (lambda F: gl(F, 2), QQ),
    "sl2": (lambda F: sl(F, 2), QQ),
    "cyclic3_nil": (lambda F: cyclic_leibniz(F, 3, [0, 0, 0]), QQ),
    "cyclic2": (lambda F: cyclic_leibniz(F, 2, [0, 1]), Field(3)),
}


def get(name: str, F: Field | None = None) -> CatalogEntry:
    if name not in NAMED:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMED)}")
    build, default = NAMED[name]
    entry = build(F or default)
    entry.name = name
    return entry


def _extension_bases():
    return [
        abelian(Field(2), 2),
        heisenberg(Field(2)),
        abelian(Field(3), 2),
        heisenberg(Field(3)),
        abelian(Field(2), 1),
        cyclic_leibniz(Field(2), 2, [0, 0]),
        abelian(Field(3), 1),
        cyclic_leibniz(Field(3), 2, [0, 0]),
    ]


def random_extension_corpus(seeds=range(100)) -> list[CatalogEntry]:
    bases = _extension_bases()
    out = []
    for s in seeds:
        base = bases[s % len(bases)]
        out.append(random_extension(base.algebra.field, base, s))
    return out


def finite_catalog() -> list[CatalogEntry]:
    """Small catalog algebras over GF(2), GF(3), GF(5)."""
    F2, F3, F5 = Field(2), Field(3), Field(5)
    out = [example8(F) for F in (F2, F3, F5)]
    out += [example17(F) for F in (F2, F3, F5)]
    out += [heisenberg(F2), heisenberg(F3)]
    out += [abelian(F2, 1), abelian(F2, 2), abelian(F2, 3), abelian(F3, 2)]
    out += [cyclic_leibniz(F2, 3, [0, 0, 0]), cyclic_leibniz(F3, 3, [0, 0, 0]), cyclic_leibniz(F3, 2, [0, 1])]
    out += [gl(F2, 2), gl(F3, 2), sl(F3, 2)]
    out.append(direct_sum(example8(F3), abelian(F3, 1)))
    return out


def rational_catalog() -> list[CatalogEntry]:
    return [example8(QQ), example17(QQ), heisenberg(QQ), gl(QQ, 2), sl(QQ, 2),
            cyclic_leibniz(QQ, 3, [0, 0, 0]), abelian(QQ, 1)]


def acceptance_corpus() -> list[CatalogEntry]:
    """Method-agreement corpus: dim-2 tensors over GF(2), worked examples, random extensions."""
    out = exhaustive_dim2(2)
    out += [example8(Field(p)) for p in (2, 3, 5)]
    out += [example17(Field(p)) for p in (2, 3, 5)]
    out += [heisenberg(Field(2)), heisenberg(Field(3))]
    out += random_extension_corpus()
    return out


# ---------------------------------------------------------------------------
# verification of asserted values
# ---------------------------------------------------------------------------


def verify_entry(entry: CatalogEntry) -> dict[str, bool]:
    """Re-check every asserted invariant by its definition."""
    from .engel import is_cartan
    from .frattini import certify_simple, frattini_report, is_generalized_frattini, is_primitive_ideal

    A = entry.algebra
    out = {}
    for key, a in entry.asserted.items():
        v = a.value
        if key == "Nil":
            ok = is_ideal(A, v) and is_nilpotent(A, v)
            if A.field.is_finite:
                ok = ok and v == frattini_report(A).Nil
        elif key == "Rad":
            ok = is_ideal(A, v) and is_solvable(A, v)
        elif key == "center":
            ok = center(A) == v
        elif key == "Phi":
            ok = frattini_report(A).Phi == v
        elif key == "square":
            full = A.full()
            ok = product_space(A, full, full) == v
        elif key in ("nFrat", "R"):
            ok = getattr(frattini_report(A), key) == v
        elif key == "simple":
            ok = certify_simple(A) == v
        elif key == "ideal_K":
            ok = is_ideal(A, v)
        elif key == "genfrat":
            ok = all(is_generalized_frattini(A, H).holds for H in v)
        elif key == "not_genfrat":
            ok = all(not is_generalized_frattini(A, H).holds for H in v)
        elif key == "primitive":
            ok = all(is_primitive_ideal(A, K).is_primitive for K in v)
        elif key == "cartan":
            ok = is_cartan(A, v)
        elif key == "solvable":
            ok = is_solvable(A) == v
        elif key == "nilpotent":
            ok = is_nilpotent(A) == v
        elif key == "minpoly_quotient":
            ok = _check_minpoly_example17(A, entry.asserted["ideal_K"].value)
        else:
            raise KeyError(key)
        out[key] = bool(ok)
    return out


def _check_minpoly_example17(A: LeibnizAlgebra, K: Subspace) -> bool:
    """L_a on A/K satisfies x(x+1) but neither x nor x+1."""
    q = quotient(A, K)
    Q = q.algebra
    L = Q.left_op(q.project(A.e(0)))
    I = Matrix.identity(Q.field, Q.dim)
    F = Q.field
    Lp1 = Matrix(F, tuple(tuple(F.red(a + b) for a, b in zip(r, s)) for r, s in zip(L.rows, I.rows)), Q.dim)
    return (L @ Lp1).is_zero() and not L.is_zero() and not Lp1.is_zero()
