"""Exact scalars over Q and GF(p), and deterministic linear algebra over them.

Vectors are plain tuples of field elements: ``Fraction`` for the rationals,
``int`` residues in ``[0, p)`` for prime fields.  Subspaces are stored by
their reduced row-echelon basis, which makes equality a tuple comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Vector = tuple


class DimensionMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
            if self.p >= 1 << 16:
                raise ValueError(f"modulus {self.p} too large (need p < 2^16)")

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> object:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def red(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def elements(self) -> range:
        if not self.p:
            raise ValueError("the rationals are not enumerable")
        return range(self.p)

    def vectors(self, n: int) -> Iterator[Vector]:
        """All vectors of F^n in lexicographic order (finite fields only)."""
        return itertools.product(self.elements(), repeat=n)

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit(self, n: int, i: int) -> Vector:
        return tuple(self.one if k == i else self.zero for k in range(n))

    def vector(self, values: Iterable) -> Vector:
        return tuple(self(v) for v in values)

    def fmt(self, x) -> str:
        return str(x)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().replace(" ", "")
        if t in ("Q", "QQ", "Rationals"):
            return cls()
        if t.upper().startswith("GF(") and t.endswith(")"):
            return cls(int(t[3:-1]))
        raise ValueError(f"unknown field {text!r}")


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# vector helpers
# ---------------------------------------------------------------------------


def vadd(F: Field, u: Vector, v: Vector) -> Vector:
    if F.p:
        p = F.p
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vsub(F: Field, u: Vector, v: Vector) -> Vector:
    if F.p:
        p = F.p
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vscale(F: Field, c, v: Vector) -> Vector:
    if F.p:
        p = F.p
        return tuple(c * a % p for a in v)
    return tuple(c * a for a in v)


def vcomb(F: Field, coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    """Linear combination ``sum(c * v)``; ``n`` is the ambient length."""
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    if F.p:
        return tuple(x % F.p for x in out)
    return tuple(Fraction(x) for x in out)


def is_zero(v: Vector) -> bool:
    return not any(v)


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def _rref_rows(F: Field, rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan with left-to-right pivoting; returns (nonzero rows, pivots)."""
    p = F.p
    R = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(R):
            break
        piv = None
        for i in range(r, len(R)):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        if p:
            prow = [x * inv % p for x in R[r]]
        else:
            prow = [x * inv for x in R[r]]
        R[r] = prow
        for i in range(len(R)):
            if i != r:
                f = R[i][c]
                if f:
                    row = R[i]
                    if p:
                        R[i] = [(a - f * b) % p for a, b in zip(row, prow)]
                    else:
                        R[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return R[:r], pivots


@dataclass(frozen=True)
class Matrix:
    """Dense matrix; as a linear map it acts on column vectors."""

    field: Field
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, F: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(F(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix")
        return cls(F, rows, ncols)

    @classmethod
    def from_columns(cls, F: Field, cols: Sequence[Vector], nrows: int) -> "Matrix":
        rows = tuple(tuple(col[i] for col in cols) for i in range(nrows))
        return cls(F, rows, len(cols))

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, tuple(F.unit(n, i) for i in range(n)), n)

    @classmethod
    def zero(cls, F: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(F, tuple(F.zero_vector(ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector length {len(v)} vs {self.ncols} columns")
        F = self.field
        return tuple(F.red(sum(a * b for a, b in zip(r, v))) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        F = self.field
        cols = other.columns()
        rows = tuple(
            tuple(F.red(sum(a * b for a, b in zip(r, c))) for c in cols) for r in self.rows
        )
        if not cols:
            return Matrix(F, tuple(() for _ in self.rows), 0)
        return Matrix(F, rows, other.ncols)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(self.columns()), self.nrows)

    def rank(self) -> int:
        return len(_rref_rows(self.field, self.rows, self.ncols)[1])


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form, zero rows kept at the bottom."""
    rows, pivots = _rref_rows(m.field, m.rows, m.ncols)
    pad = [m.field.zero_vector(m.ncols)] * (m.nrows - len(rows))
    return Matrix(m.field, tuple(tuple(r) for r in rows) + tuple(pad), m.ncols), pivots


def nullspace_rows(F: Field, rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {v : r . v = 0 for every row r}, one vector per free column."""
    R, pivots = _rref_rows(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = F.red(-row[f])
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held as its canonical RREF basis."""

    field: Field
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, F: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{ambient}")
        rows, _ = _rref_rows(F, vectors, ambient)
        return cls(F, ambient, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, ())

    @classmethod
    def full(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, tuple(F.unit(ambient, i) for i in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient

    def reduce(self, v: Vector) -> Vector:
        """Remainder of v after clearing the pivot coordinates."""
        F = self.field
        p = F.p
        w = list(v)
        for row in self.basis:
            pc = next(i for i, x in enumerate(row) if x)
            c = w[pc]
            if c:
                if p:
                    w = [(a - c * b) % p for a, b in zip(w, row)]
                else:
                    w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v) -> bool:
        if isinstance(v, Subspace):
            return v.issubspace(self)
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{self.ambient}")
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        _check(self, other)
        if self.dim > other.dim:
            return False
        return all(not any(other.reduce(r)) for r in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self.issubspace(other)

    def __ge__(self, other: "Subspace") -> bool:
        return other.issubspace(self)

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def __add__(self, other: "Subspace") -> "Subspace":
        _check(self, other)
        if other.issubspace(self):
            return self
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def constraints(self) -> list[Vector]:
        """Rows c with self = {x : c . x = 0 for all c}."""
        return nullspace_rows(self.field, self.basis, self.ambient)

    def coordinates(self, v: Vector) -> Vector:
        """Coordinates of a member v in the RREF basis (read at the pivots)."""
        return tuple(v[pc] for pc in self.pivots)

    def elements(self) -> Iterator[Vector]:
        """Every vector of the subspace (finite fields only)."""
        F = self.field
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            yield vcomb(F, coeffs, self.basis, self.ambient)

    def sort_key(self):
        return (self.dim, self.basis)

    def __repr__(self) -> str:
        return f"Subspace({self.field}, {self.ambient}, dim={self.dim}, {list(map(list, self.basis))})"


def _check(u: Subspace, v: Subspace):
    if u.ambient != v.ambient or u.field != v.field:
        raise DimensionMismatch(f"subspaces of F^{u.ambient} and F^{v.ambient}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check(u, v)
    if u.issubspace(v):
        return u
    if v.issubspace(u):
        return v
    F = u.field
    cons = v.constraints()
    # coefficients a with sum a_i u_i satisfying every constraint of v
    rows = [[F.red(sum(c * x for c, x in zip(con, ub))) for ub in u.basis] for con in cons]
    coeffs = nullspace_rows(F, rows, u.dim)
    return Subspace.span(F, u.ambient, [vcomb(F, a, u.basis, u.ambient) for a in coeffs])


def contains(u: Subspace, v) -> bool:
    return u.contains(v)


def kernel(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.ncols, nullspace_rows(m.field, m.rows, m.ncols))


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.columns())


def preimage(maps: Sequence[Matrix], target: Subspace, F: Field | None = None, n: int | None = None) -> Subspace:
    """{x : M x in target for every M in maps} (all of F^n when maps is empty)."""
    if not maps:
        return Subspace.full(F, n)
    F = maps[0].field
    n = maps[0].ncols
    cons = target.constraints()
    rows = []
    for M in maps:
        for c in cons:
            rows.append([F.red(sum(ci * M.rows[i][j] for i, ci in enumerate(c) if ci)) for j in range(n)])
    return Subspace.span(F, n, nullspace_rows(F, rows, n))


def quotient_basis(a: Subspace, b: Subspace) -> list[Vector]:
    """Coset representatives for a/b, taken greedily from a's RREF basis.

    When ``a`` is the whole space these are exactly the standard basis
    vectors at the non-pivot columns of ``b``.
    """
    if not b.issubspace(a):
        raise ValueError("quotient_basis needs b inside a")
    F = a.field
    if a.is_full():
        piv = set(b.pivots)
        return [F.unit(a.ambient, j) for j in range(a.ambient) if j not in piv]
    reps = []
    cur = b
    for r in a.basis:
        if r not in cur:
            reps.append(r)
            cur = Subspace.span(F, a.ambient, cur.basis + (r,))
    return reps


def operator_power_stable(m: Matrix, n: int | None = None) -> tuple[Subspace, Subspace]:
    """Fitting components (ker m^n, im m^n) for n at least the dimension."""
    if not m.is_square:
        raise DimensionMismatch("Fitting decomposition needs a square matrix")
    if n is None:
        n = m.nrows
    if n < m.nrows:
        raise ValueError("power must be at least the dimension")
    mn = m ** n
    return kernel(mn), image(mn)
