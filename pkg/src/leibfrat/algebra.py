"""Leibniz algebras given by structure constants.

Convention: left Leibniz, i.e. every left multiplication is a derivation,
``x(yz) = (xy)z + y(xz)``.  Elements are coordinate tuples in the basis
``e_0 .. e_{n-1}``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactlin import (
    Field,
    Matrix,
    Subspace,
    Vector,
    nullspace_rows,
    preimage,
    vcomb,
)


class LeibnizIdentityViolation(ValueError):
    def __init__(self, i, j, k, lhs, rhs):
        self.triple = (i, j, k)
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"left Leibniz identity fails on basis triple ({i}, {j}, {k}): "
            f"e{i}(e{j}e{k}) = {list(lhs)} but (e{i}e{j})e{k} + e{j}(e{i}e{k}) = {list(rhs)}"
        )


class BadIndex(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


def _mult(F: Field, terms, n: int, u: Vector, v: Vector) -> Vector:
    out = [0] * n
    for i, j, w in terms:
        a = u[i]
        if a:
            b = v[j]
            if b:
                c = a * b
                for k, x in w:
                    out[k] += c * x
    if F.p:
        return tuple(x % F.p for x in out)
    return tuple(F(x) for x in out)


def leibniz_violation(F: Field, n: int, table) -> tuple | None:
    """First basis triple breaking the left Leibniz identity, or None."""
    terms = _sparse_terms(table)
    units = [F.unit(n, i) for i in range(n)]
    from .exactlin import vadd

    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = _mult(F, terms, n, units[i], table[j][k])
                rhs = vadd(
                    F,
                    _mult(F, terms, n, table[i][j], units[k]),
                    _mult(F, terms, n, units[j], table[i][k]),
                )
                if lhs != rhs:
                    return i, j, k, lhs, rhs
    return None


def _sparse_terms(table):
    terms = []
    for i, row in enumerate(table):
        for j, w in enumerate(row):
            nz = tuple((k, x) for k, x in enumerate(w) if x)
            if nz:
                terms.append((i, j, nz))
    return terms


@dataclass(frozen=True)
class LeibnizAlgebra:
    """Structure constants ``table[i][j][k]``: e_i e_j = sum_k table[i][j][k] e_k."""

    field: Field
    dim: int
    table: tuple
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(self.dim)))
        if len(self.names) != self.dim:
            raise BadIndex(f"{len(self.names)} basis names for dimension {self.dim}")
        bad = leibniz_violation(self.field, self.dim, self.table)
        if bad is not None:
            raise LeibnizIdentityViolation(*bad)

    @functools.cached_property
    def _terms(self):
        return _sparse_terms(self.table)

    @functools.cached_property
    def _basis_ops(self):
        return (
            [self.left_op(self.e(i)) for i in range(self.dim)],
            [self.right_op(self.e(i)) for i in range(self.dim)],
        )

    def e(self, i: int) -> Vector:
        return self.field.unit(self.dim, i)

    def basis(self) -> list[Vector]:
        return [self.e(i) for i in range(self.dim)]

    def zero(self) -> Vector:
        return self.field.zero_vector(self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(self.field, self.dim, [self.field.vector(v) for v in vectors])

    def multiply(self, u: Vector, v: Vector) -> Vector:
        if len(u) != self.dim or len(v) != self.dim:
            raise BadIndex(f"vectors must have length {self.dim}")
        return _mult(self.field, self._terms, self.dim, u, v)

    def left_op(self, x: Vector) -> Matrix:
        """Matrix of L_x : v -> x v."""
        return Matrix.from_columns(self.field, [self.multiply(x, self.e(j)) for j in range(self.dim)], self.dim)

    def right_op(self, x: Vector) -> Matrix:
        """Matrix of R_x : v -> v x."""
        return Matrix.from_columns(self.field, [self.multiply(self.e(j), x) for j in range(self.dim)], self.dim)

    @property
    def is_lie(self) -> bool:
        """Antisymmetric product (then the algebra is a Lie algebra)."""
        n = self.dim
        F = self.field
        for i in range(n):
            if any(self.table[i][i]):
                return False
            for j in range(i + 1, n):
                if any(F.red(a + b) for a, b in zip(self.table[i][j], self.table[j][i])):
                    return False
        return True

    def is_abelian(self) -> bool:
        return not self._terms

    def fmt_vector(self, v: Vector) -> str:
        parts = []
        for c, name in zip(v, self.names):
            if not c:
                continue
            if c == 1:
                parts.append(f"+{name}")
            elif self.field.p == 0 and c == -1:
                parts.append(f"-{name}")
            else:
                s = str(c)
                parts.append(f"{s}*{name}" if s.startswith("-") else f"+{s}*{name}")
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def fmt_subspace(self, U: Subspace) -> list[str]:
        return [self.fmt_vector(b) for b in U.basis]

    def __repr__(self) -> str:
        return f"LeibnizAlgebra({self.field}, dim={self.dim}, basis={' '.join(self.names)})"


def construct(F: Field, dim: int, products: Iterable, names: Sequence[str] | None = None) -> LeibnizAlgebra:
    """Build and validate an algebra from ``(i, j, {k: coeff})`` products.

    The coefficient part may also be a full length-``dim`` vector.  Omitted
    products are zero.
    """
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, w in products:
        if not (0 <= i < dim and 0 <= j < dim):
            raise BadIndex(f"product index ({i}, {j}) out of range for dim {dim}")
        items = w.items() if isinstance(w, dict) else enumerate(w)
        for k, c in items:
            if not 0 <= k < dim:
                raise BadIndex(f"output index {k} out of range for dim {dim}")
            table[i][j][k] = table[i][j][k] + c
    frozen = tuple(tuple(tuple(F(x) for x in w) for w in row) for row in table)
    return LeibnizAlgebra(F, dim, frozen, tuple(names) if names else ())


def multiply(A: LeibnizAlgebra, u: Vector, v: Vector) -> Vector:
    return A.multiply(u, v)


def left_op(A: LeibnizAlgebra, x: Vector) -> Matrix:
    return A.left_op(x)


def right_op(A: LeibnizAlgebra, x: Vector) -> Matrix:
    return A.right_op(x)


# ---------------------------------------------------------------------------
# subspace-level operations
# ---------------------------------------------------------------------------


def product_space(A: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{u v : u in U, v in V}."""
    if U.is_zero() or V.is_zero():
        return A.zero_space()
    return A.span(A.multiply(u, v) for u in U.basis for v in V.basis)


def subalgebra_closure(A: LeibnizAlgebra, S: Iterable[Vector]) -> Subspace:
    W = A.span(S)
    while True:
        W2 = W + product_space(A, W, W)
        if W2 == W:
            return W
        W = W2


def ideal_closure(A: LeibnizAlgebra, S: Iterable[Vector]) -> Subspace:
    """X^A, the smallest two-sided ideal containing S."""
    W = A.span(S)
    full = A.full()
    while True:
        W2 = W + product_space(A, full, W) + product_space(A, W, full)
        if W2 == W:
            return W
        W = W2


def is_subalgebra(A: LeibnizAlgebra, U: Subspace) -> bool:
    return all(U.contains(A.multiply(u, v)) for u in U.basis for v in U.basis)


def is_ideal(A: LeibnizAlgebra, U: Subspace) -> bool:
    n = A.dim
    for u in U.basis:
        for i in range(n):
            ei = A.e(i)
            if not U.contains(A.multiply(ei, u)) or not U.contains(A.multiply(u, ei)):
                return False
    return True


def lower_central(A: LeibnizAlgebra, U: Subspace | None = None, mod: Subspace | None = None) -> list[Subspace]:
    """U = U^1 >= U^2 >= ... with U^{k+1} = U U^k + U^k U (+ mod), until stable."""
    U = A.full() if U is None else U
    if mod is not None:
        U = U + mod
    terms = [U]
    while True:
        Uk = terms[-1]
        nxt = product_space(A, U, Uk) + product_space(A, Uk, U)
        if mod is not None:
            nxt = nxt + mod
        if nxt == Uk:
            return terms
        terms.append(nxt)


def lower_central_left(A: LeibnizAlgebra) -> list[Subspace]:
    """One-sided variant A^{k+1} = A A^k, for cross-checking."""
    full = A.full()
    terms = [full]
    while True:
        nxt = product_space(A, full, terms[-1])
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)


def derived_series(A: LeibnizAlgebra, U: Subspace | None = None, mod: Subspace | None = None) -> list[Subspace]:
    U = A.full() if U is None else U
    if mod is not None:
        U = U + mod
    terms = [U]
    while True:
        Uk = terms[-1]
        nxt = product_space(A, Uk, Uk)
        if mod is not None:
            nxt = nxt + mod
        if nxt == Uk:
            return terms
        terms.append(nxt)


def omega(A: LeibnizAlgebra, U: Subspace | None = None) -> Subspace:
    """Stable term U^omega of the lower central series."""
    return lower_central(A, U)[-1]


def is_nilpotent(A: LeibnizAlgebra, U: Subspace | None = None, mod: Subspace | None = None) -> bool:
    """Nilpotency of the subalgebra U, or of (U + mod)/mod when mod is an ideal."""
    target = A.zero_space() if mod is None else mod
    return lower_central(A, U, mod)[-1] == target


def is_solvable(A: LeibnizAlgebra, U: Subspace | None = None, mod: Subspace | None = None) -> bool:
    target = A.zero_space() if mod is None else mod
    return derived_series(A, U, mod)[-1] == target


def centralizer_mod(A: LeibnizAlgebra, I: Subspace) -> Subspace:
    """{x : x A + A x inside I}; for an ideal I this is the preimage of Z(A/I)."""
    lefts, rights = A._basis_ops
    # x e_j = R_{e_j} x and e_j x = L_{e_j} x
    return preimage(list(rights) + list(lefts), I, A.field, A.dim)


def center(A: LeibnizAlgebra) -> Subspace:
    """Two-sided center Z(A)."""
    return centralizer_mod(A, A.zero_space())


def left_center(A: LeibnizAlgebra) -> Subspace:
    """{x : x a = 0 for all a}; differs from center() in non-Lie algebras."""
    return preimage(list(A._basis_ops[1]), A.zero_space(), A.field, A.dim)


def upper_central(A: LeibnizAlgebra) -> list[Subspace]:
    terms = [A.zero_space()]
    while True:
        nxt = centralizer_mod(A, terms[-1])
        if nxt == terms[-1]:
            return terms
        terms.append(nxt)


def leib(A: LeibnizAlgebra) -> Subspace:
    """Leib(A), the ideal spanned by all squares x x."""
    n = A.dim
    F = A.field
    sq = [A.multiply(A.e(i), A.e(i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            sq.append(tuple(F.red(a + b) for a, b in zip(A.table[i][j], A.table[j][i])))
    # span of squares is span of e_i e_i and e_i e_j + e_j e_i; close to be safe
    return ideal_closure(A, sq)


@dataclass(frozen=True)
class SeriesReport:
    lower_central: tuple
    omega: Subspace
    derived: tuple
    upper_central: tuple
    z_star: Subspace
    nilpotent: bool
    solvable: bool
    nilpotency_class: int | None


def series(A: LeibnizAlgebra) -> SeriesReport:
    lc = lower_central(A)
    dv = derived_series(A)
    uc = upper_central(A)
    zero = A.zero_space()
    nil = lc[-1] == zero
    cls = None
    if nil:
        # A^{c+1} = 0 with A^1 = A: the class is the number of nonzero terms
        cls = sum(1 for t in lc if not t.is_zero())
    return SeriesReport(
        lower_central=tuple(lc),
        omega=lc[-1],
        derived=tuple(dv),
        upper_central=tuple(uc),
        z_star=uc[-1],
        nilpotent=nil,
        solvable=dv[-1] == zero,
        nilpotency_class=cls,
    )


@dataclass(frozen=True)
class InvariantsReport:
    center: Subspace
    leib: Subspace
    square: Subspace
    is_lie: bool


def invariants(A: LeibnizAlgebra) -> InvariantsReport:
    full = A.full()
    return InvariantsReport(center(A), leib(A), product_space(A, full, full), A.is_lie)


def normalizer(A: LeibnizAlgebra, U: Subspace) -> Subspace:
    """N_A(U) = {x : x U and U x inside U}."""
    maps = []
    for u in U.basis:
        maps.append(A.right_op(u))  # x -> x u
        maps.append(A.left_op(u))  # x -> u x
    return preimage(maps, U, A.field, A.dim)


def derivations(A: LeibnizAlgebra) -> list[Matrix]:
    """Basis of Der(A); a derivation D is stored with D[k][i] = coeff of e_k in D(e_i)."""
    n = A.dim
    F = A.field
    c = A.table
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [0] * (n * n)
                for m in range(n):
                    if c[i][j][m]:
                        row[k * n + m] += c[i][j][m]
                    if c[m][j][k]:
                        row[m * n + i] -= c[m][j][k]
                    if c[i][m][k]:
                        row[m * n + j] -= c[i][m][k]
                if any(row):
                    rows.append([F(x) for x in row])
    sols = nullspace_rows(F, rows, n * n)
    return [Matrix(F, tuple(tuple(s[k * n:(k + 1) * n]) for k in range(n)), n) for s in sols]


def is_derivation(A: LeibnizAlgebra, D: Matrix) -> bool:
    from .exactlin import vadd

    F = A.field
    for u in A.basis():
        for v in A.basis():
            lhs = D.apply(A.multiply(u, v))
            rhs = vadd(F, A.multiply(D.apply(u), v), A.multiply(u, D.apply(v)))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# quotients and subalgebras as algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """A/I with coset representatives e_j at the non-pivot columns of I."""

    parent: LeibnizAlgebra
    ideal: Subspace
    algebra: LeibnizAlgebra
    reps: tuple  # column indices of A used as representatives

    def project(self, v: Vector) -> Vector:
        r = self.ideal.reduce(v)
        return tuple(r[j] for j in self.reps)

    def section(self, w: Vector) -> Vector:
        out = list(self.parent.zero())
        for j, x in zip(self.reps, w):
            out[j] = x
        return tuple(out)

    def project_subspace(self, U: Subspace) -> Subspace:
        return self.algebra.span(self.project(u) for u in U.basis)

    def preimage(self, W: Subspace) -> Subspace:
        return self.parent.span([self.section(w) for w in W.basis]) + self.ideal


def quotient(A: LeibnizAlgebra, I: Subspace) -> Quotient:
    if not is_ideal(A, I):
        raise NotAnIdeal("quotient needs a two-sided ideal")
    piv = set(I.pivots)
    reps = tuple(j for j in range(A.dim) if j not in piv)
    m = len(reps)
    F = A.field
    table = []
    for a in reps:
        row = []
        for b in reps:
            r = I.reduce(A.table[a][b])
            row.append(tuple(r[j] for j in reps))
        table.append(tuple(row))
    Q = LeibnizAlgebra(F, m, tuple(table), tuple(A.names[j] for j in reps))
    return Quotient(A, I, Q, reps)


@dataclass(frozen=True)
class Embedded:
    """A subalgebra U viewed as an algebra in the RREF basis of U."""

    parent: LeibnizAlgebra
    space: Subspace
    algebra: LeibnizAlgebra

    def embed(self, w: Vector) -> Vector:
        return vcomb(self.parent.field, w, self.space.basis, self.parent.dim)

    def restrict(self, v: Vector) -> Vector:
        return self.space.coordinates(v)

    def embed_subspace(self, W: Subspace) -> Subspace:
        return self.parent.span(self.embed(w) for w in W.basis)

    def restrict_subspace(self, U: Subspace) -> Subspace:
        return self.algebra.span(self.restrict(u) for u in U.basis)


def as_algebra(A: LeibnizAlgebra, U: Subspace) -> Embedded:
    if not is_subalgebra(A, U):
        raise ValueError("not a subalgebra")
    k = U.dim
    table = tuple(
        tuple(U.coordinates(A.multiply(u, v)) for v in U.basis) for u in U.basis
    )
    B = LeibnizAlgebra(A.field, k, table, tuple(f"u{i + 1}" for i in range(k)))
    return Embedded(A, U, B)


def with_field(A: LeibnizAlgebra, F: Field) -> LeibnizAlgebra:
    """Re-read integral/rational structure constants over another field."""
    return LeibnizAlgebra(F, A.dim, tuple(tuple(tuple(F(x) for x in w) for w in row) for row in A.table), A.names)
