from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leibfrat import catalog
from leibfrat.exactlin import (
    GF,
    QQ,
    DimensionMismatch,
    Field,
    Matrix,
    Subspace,
    image,
    kernel,
    operator_power_stable,
    quotient_basis,
    rref,
    subspace_intersect,
    subspace_sum,
)

from .conftest import PRIMES, matrices


def span(F, n, *vs):
    return Subspace.span(F, n, [tuple(F(x) for x in v) for v in vs])


# -- oracles ---------------------------------------------------------------


def test_rref_identity():
    I = Matrix.identity(QQ, 2)
    R, piv = rref(I)
    assert R == I
    assert piv == [0, 1]


def test_rref_zero():
    Z = Matrix.zero(QQ, 2, 3)
    R, piv = rref(Z)
    assert R == Z
    assert piv == []


def test_rref_gf2_repeated_row():
    F = GF(2)
    R, piv = rref(Matrix.from_rows(F, [[1, 1], [1, 1]]))
    assert R.rows == ((1, 1), (0, 0))
    assert piv == [0]


def test_kernel_oracles(ex17_q):
    assert kernel(Matrix.identity(QQ, 3)).is_zero()
    assert kernel(Matrix.zero(QQ, 3, 3)).is_full()
    La = ex17_q.left_op(ex17_q.e(0))
    assert kernel(La) == span(QQ, 3, (1, 0, -1))


def test_sum_intersect_oracles():
    e1, e2 = span(QQ, 2, (1, 0)), span(QQ, 2, (0, 1))
    assert subspace_sum(e1, e2).is_full()
    assert subspace_intersect(e1, e1) == e1
    F = GF(2)
    U = span(F, 3, (1, 1, 0), (0, 0, 1))
    V = span(F, 3, (0, 1, 1), (1, 0, 0))
    assert U & V == span(F, 3, (1, 1, 1))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        span(QQ, 2, (1, 0)) + span(QQ, 3, (1, 0, 0))


def test_operator_power_stable_oracles(ex17_q):
    J = Matrix.from_rows(QQ, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    k, i = operator_power_stable(J, 3)
    assert k.is_full() and i.is_zero()
    k, i = operator_power_stable(Matrix.identity(QQ, 3), 3)
    assert k.is_zero() and i.is_full()
    k, i = operator_power_stable(ex17_q.left_op(ex17_q.e(0)), 3)
    assert k == span(QQ, 3, (1, 0, -1))
    assert i == span(QQ, 3, (0, 1, 0), (0, 0, 1))


def test_quotient_basis_complements():
    F = GF(3)
    full = Subspace.full(F, 3)
    b = span(F, 3, (1, 1, 0))
    reps = quotient_basis(full, b)
    assert len(reps) == 2
    assert (b + Subspace.span(F, 3, reps)).is_full()


def test_field_parse_and_canonical_forms():
    assert Field.parse("GF(7)") == GF(7)
    assert Field.parse("Q") == QQ
    with pytest.raises(ValueError):
        GF(4)
    assert QQ("6/4") == Fraction(3, 2)
    assert GF(5)(Fraction(1, 2)) == 3
    assert GF(5)(-1) == 4


# -- properties ------------------------------------------------------------


@given(matrices())
def test_rref_idempotent(m):
    R, piv = rref(m)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv


@given(matrices())
def test_rank_nullity(m):
    assert m.rank() + kernel(m).dim == m.ncols


@given(matrices())
def test_kernel_annihilated(m):
    for v in kernel(m).basis:
        assert not any(m.apply(v))


@given(matrices(square=True))
def test_fitting_direct_sum(m):
    n = m.ncols
    k, i = operator_power_stable(m, max(n, 1))
    assert (k + i).dim == n
    assert (k & i).is_zero()
    for v in k.basis:
        assert k.contains(m.apply(v))
    for v in i.basis:
        assert i.contains(m.apply(v))


@given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(-50, 50))
def test_prime_field_matches_integers(p, a, b):
    F = GF(p)
    assert F.red(F(a) * F(b)) == (a * b) % p
    assert F.red(F(a) + F(b)) == (a + b) % p
    if a % p:
        assert F.red(F.inv(F(a)) * a) == 1


@given(matrices(field=QQ), matrices(field=QQ))
def test_modular_law(m1, m2):
    n = 3
    pad = lambda m: [tuple(list(r[:n]) + [0] * (n - len(r[:n]))) for r in m.rows]
    U = Subspace.span(QQ, n, pad(m1))
    W = Subspace.span(QQ, n, pad(m2))
    V = U + W
    # U <= V: (U + W) & V == U + (W & V)
    assert (U + W) & V == U + (W & V)


@given(matrices())
def test_image_dim_is_rank(m):
    assert image(m).dim == m.rank()


def test_subspace_equality_is_canonical():
    F = GF(5)
    a = span(F, 3, (1, 2, 3), (0, 1, 1))
    b = span(F, 3, (1, 3, 4), (2, 4, 1))
    assert (a == b) == (a <= b and b <= a)
    assert a.basis == span(F, 3, *[tuple(v) for v in reversed(a.basis)]).basis


def test_catalog_kernel_example_over_gf5():
    A = catalog.example17(GF(5)).algebra
    assert kernel(A.left_op(A.e(0))) == span(GF(5), 3, (1, 0, 4))
