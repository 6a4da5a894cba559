from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from leibfrat import catalog
from leibfrat.algebra import as_algebra, is_nilpotent, is_subalgebra, normalizer
from leibfrat.engel import (
    engel_internal_witness,
    engel_subalgebra,
    find_cartan,
    fitting,
    is_cartan,
)
from leibfrat.exactlin import GF, QQ
from leibfrat.frattini import candidate_ideals
from leibfrat.lattice import cartan_subalgebras_of

from .conftest import extension_algebras


def test_engel_oracles(ex8_q, ex17_q):
    assert engel_subalgebra(ex17_q, ex17_q.zero()).is_full()
    E = engel_subalgebra(ex17_q, ex17_q.e(0))
    assert E == ex17_q.span([(1, 0, -1)])
    assert not E.contains(ex17_q.e(0))
    assert engel_subalgebra(ex8_q, ex8_q.e(2)) == ex8_q.span([ex8_q.e(2)])


def test_fitting_oracles(ex8_q, ex17_q):
    H = catalog.heisenberg(QQ).algebra
    for x in H.basis():
        A0, A1 = fitting(H, x)
        assert A0.is_full() and A1.is_zero()
    A0, A1 = fitting(ex17_q, ex17_q.e(0))
    assert A0 == ex17_q.span([(1, 0, -1)])
    assert A1 == ex17_q.span([ex17_q.e(1), ex17_q.e(2)])
    A0, A1 = fitting(ex8_q, ex8_q.e(2))
    assert A0 == ex8_q.span([ex8_q.e(2)])
    assert A1 == ex8_q.span([ex8_q.e(0), ex8_q.e(1)])


def test_internal_witness(ex17_q):
    z = ex17_q.e(0)
    b = engel_internal_witness(ex17_q, z)
    assert engel_subalgebra(ex17_q, b) == engel_subalgebra(ex17_q, z)
    A = catalog.abelian(QQ, 2).algebra
    assert engel_internal_witness(A, A.e(0)) == A.e(0)


def test_find_cartan_oracles(ex8_q, ex17_q):
    H = catalog.heisenberg(QQ).algebra
    assert find_cartan(H).cartan.is_full()
    r = find_cartan(ex17_q)
    assert r.verified and r.cartan == ex17_q.span([(1, 0, -1)])
    r = find_cartan(ex8_q)
    assert r.verified and r.cartan == ex8_q.span([ex8_q.e(2)])


def test_find_cartan_seed_determinism(ex8_q):
    a = find_cartan(ex8_q, seed=11)
    b = find_cartan(ex8_q, seed=11)
    assert a == b


def test_find_cartan_matches_lattice_over_gf5():
    for e in (catalog.example8(GF(5)), catalog.example17(GF(5)), catalog.gl(GF(3), 2)):
        r = find_cartan(e.algebra)
        assert r.cartan in cartan_subalgebras_of(e.algebra)


def test_normalizer_property_over_q():
    # A = K + N_A(C) for a Cartan subalgebra C of an ideal K
    for e in catalog.rational_catalog():
        A = e.algebra
        for K in candidate_ideals(A):
            if K.is_zero():
                continue
            emb = as_algebra(A, K)
            C = emb.embed_subspace(find_cartan(emb.algebra).cartan)
            assert (K + normalizer(A, C)).is_full(), (e.label, K)


@given(extension_algebras(), st.data())
def test_fitting_direct_sum_and_subalgebra(A, data):
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=A.dim, max_size=A.dim))
    F = A.field
    x = tuple(F.red(sum(F(c) * b[k] for c, b in zip(coeffs, A.basis()))) for k in range(A.dim))
    A0, A1 = fitting(A, x)
    assert (A0 + A1).is_full() and (A0 & A1).is_zero()
    assert is_subalgebra(A, A0)


@given(extension_algebras())
def test_verified_cartans_are_cartan(A):
    r = find_cartan(A, budget=2000)
    assert r.verified and is_cartan(A, r.cartan)
    assert is_nilpotent(A, r.cartan) and normalizer(A, r.cartan) == r.cartan
