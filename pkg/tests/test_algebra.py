from __future__ import annotations

import pytest
from hypothesis import given

from leibfrat import catalog
from leibfrat.algebra import (
    BadIndex,
    LeibnizIdentityViolation,
    NotAnIdeal,
    center,
    construct,
    derivations,
    ideal_closure,
    is_derivation,
    is_ideal,
    is_subalgebra,
    leib,
    lower_central,
    normalizer,
    product_space,
    quotient,
    series,
    subalgebra_closure,
    upper_central,
)
from leibfrat.exactlin import GF, QQ, Matrix

from .conftest import extension_algebras


# -- construction ----------------------------------------------------------


def test_example8_is_lie_over_gf5():
    A = catalog.example8(GF(5)).algebra
    assert A.is_lie


def test_abelian_construct():
    A = construct(QQ, 3, [])
    assert A.is_abelian()
    assert center(A).is_full()


def test_identity_violation_reports_triple():
    with pytest.raises(LeibnizIdentityViolation) as exc:
        construct(GF(2), 2, [(0, 0, {0: 1})])
    assert exc.value.triple == (0, 0, 0)


def test_bad_index():
    with pytest.raises(BadIndex):
        construct(QQ, 2, [(0, 2, {0: 1})])


# -- products --------------------------------------------------------------


def test_example17_products(ex17_q):
    a, a2, a3 = ex17_q.basis()
    assert ex17_q.multiply(a, a3) == a2
    assert ex17_q.multiply(ex17_q.zero(), a) == ex17_q.zero()


def test_example8_left_z(ex8_q):
    x, y, z = ex8_q.basis()
    Lz = ex8_q.left_op(z)
    assert Lz.apply(x) == tuple(-c for c in x)
    assert Lz.apply(y) == y
    assert not any(Lz.apply(z))


def test_product_space_oracles(ex8_q, ex17_q):
    full = ex8_q.full()
    assert product_space(ex8_q, full, full) == ex8_q.span([ex8_q.e(0), ex8_q.e(1)])
    assert product_space(ex8_q, ex8_q.zero_space(), full).is_zero()
    sq = product_space(ex17_q, ex17_q.full(), ex17_q.full())
    assert product_space(ex17_q, sq, ex17_q.full()).is_zero()


def test_closures(ex8_q, ex17_q):
    assert subalgebra_closure(ex17_q, [ex17_q.e(0)]).is_full()
    assert ideal_closure(ex17_q, []).is_zero()
    assert ideal_closure(ex8_q, [ex8_q.e(0)]) == ex8_q.span([ex8_q.e(0)])


def test_ideal_and_subalgebra_oracles(ex17_q):
    K = ex17_q.span([(0, 1, 1)])
    assert is_ideal(ex17_q, K)
    assert is_ideal(ex17_q, ex17_q.full()) and is_ideal(ex17_q, ex17_q.zero_space())
    q = quotient(ex17_q, K)
    Q = q.algebra
    abar, a2bar = q.project(ex17_q.e(0)), q.project(ex17_q.e(1))
    U = Q.span([tuple(u + v for u, v in zip(abar, a2bar))])
    assert is_subalgebra(Q, U)
    assert not is_ideal(Q, U)


# -- series ----------------------------------------------------------------


def test_series_example17(ex17_q):
    s = series(ex17_q)
    sq = ex17_q.span([ex17_q.e(1), ex17_q.e(2)])
    assert s.lower_central[1] == sq
    assert s.omega == sq
    assert not s.nilpotent and s.solvable


def test_series_abelian():
    s = series(construct(QQ, 2, []))
    assert s.nilpotent and s.nilpotency_class == 1


def test_series_example8(ex8_q):
    s = series(ex8_q)
    xy = ex8_q.span([ex8_q.e(0), ex8_q.e(1)])
    assert s.derived[1] == xy
    assert s.derived[2].is_zero()
    assert s.solvable and not s.nilpotent


def test_center_oracles(ex8_q):
    assert center(ex8_q).is_zero()
    gl2 = catalog.gl(QQ, 2).algebra
    assert center(gl2) == gl2.span([(1, 0, 0, 1)])


def test_quotient_oracles(ex8_q, ex17_q):
    K = ex17_q.span([(0, 1, 1)])
    q = quotient(ex17_q, K)
    Q = q.algebra
    abar, a2bar = q.project(ex17_q.e(0)), q.project(ex17_q.e(1))
    assert Q.multiply(abar, abar) == a2bar
    assert Q.multiply(abar, a2bar) == tuple(-c for c in a2bar)
    q0 = quotient(ex17_q, ex17_q.zero_space())
    assert q0.algebra.table == ex17_q.table
    qx = quotient(ex8_q, ex8_q.span([ex8_q.e(0)]))
    Y, Z = qx.algebra.basis()
    assert qx.algebra.multiply(Z, Y) == Y
    assert qx.algebra.multiply(Y, Z) == tuple(-c for c in Y)
    with pytest.raises(NotAnIdeal):
        quotient(ex8_q, ex8_q.span([ex8_q.e(2)]))


def test_normalizer_oracles(ex8_q, ex17_q):
    I = ex8_q.span([ex8_q.e(0)])
    assert normalizer(ex8_q, I).is_full()
    C = ex17_q.span([(1, 0, -1)])
    assert normalizer(ex17_q, C) == C
    Z = ex8_q.span([ex8_q.e(2)])
    assert normalizer(ex8_q, Z) == Z


def test_derivation_oracles(ex8_q):
    A = construct(QQ, 2, [])
    assert len(derivations(A)) == 4
    H = catalog.heisenberg(GF(3)).algebra
    D = Matrix.from_rows(GF(3), [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert is_derivation(H, D)
    assert is_derivation(ex8_q, ex8_q.left_op(ex8_q.e(2)))


def test_quotient_series_commutes():
    # the image of the lower central series of A in A/I is that of A/I when I lies in every term
    A = catalog.example17(GF(5)).algebra
    s = series(A)
    I = A.span([(0, 1, 1)])
    q = quotient(A, I)
    got = lower_central(q.algebra)
    want = [q.project_subspace(U + I) for U in s.lower_central]
    assert got[: len(want)] == want[: len(got)]


# -- properties on random extensions ---------------------------------------


@given(extension_algebras())
def test_squares_left_annihilate(A):
    for x in A.basis():
        xx = A.multiply(x, x)
        for y in A.basis():
            assert not any(A.multiply(xx, y))


@given(extension_algebras())
def test_series_terms_are_ideals(A):
    s = series(A)
    for U in list(s.lower_central) + list(s.derived) + list(s.upper_central):
        assert is_ideal(A, U)
    assert s.nilpotent <= s.solvable
    assert s.z_star == upper_central(A)[-1]


@given(extension_algebras())
def test_leib_is_ideal_and_quotient_is_lie(A):
    L = leib(A)
    assert is_ideal(A, L)
    assert product_space(A, L, A.full()).is_zero()
    assert quotient(A, L).algebra.is_lie


@given(extension_algebras())
def test_left_multiplications_are_derivations(A):
    for x in A.basis():
        assert is_derivation(A, A.left_op(x))
