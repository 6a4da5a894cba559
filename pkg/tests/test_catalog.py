from __future__ import annotations

import pytest

from leibfrat import catalog
from leibfrat.algebra import center, is_nilpotent, is_solvable
from leibfrat.exactlin import GF, QQ, Matrix
from leibfrat.lattice import lattice_report


@pytest.mark.parametrize("entry", catalog.finite_catalog() + catalog.rational_catalog(), ids=lambda e: e.label)
def test_asserted_values_reverify(entry):
    checks = catalog.verify_entry(entry)
    assert all(checks.values()), checks


def test_example8_variants():
    assert catalog.example8(QQ).algebra.is_lie
    assert lattice_report(catalog.example8(GF(5)).algebra).subalgebras
    assert "char2" in catalog.example8(GF(2)).flags


def test_cyclic_family():
    e17 = catalog.example17(QQ).algebra
    assert catalog.cyclic_leibniz(QQ, 3, [0, 1, 0]).algebra.table == e17.table
    assert is_nilpotent(catalog.cyclic_leibniz(QQ, 3, [0, 0, 0]).algebra)
    A = catalog.cyclic_leibniz(GF(3), 2, [0, 1]).algebra
    assert is_solvable(A) and not is_nilpotent(A)
    with pytest.raises(ValueError):
        catalog.cyclic_leibniz(QQ, 2, [1, 0])


def test_matrix_algebras():
    gl2, sl2 = catalog.matrix_algebras(QQ, 2)
    assert center(gl2.algebra) == gl2.algebra.span([(1, 0, 0, 1)])
    assert center(sl2.algebra).is_zero()
    assert catalog.gl(GF(2), 2).algebra.dim == 4


def test_small_families():
    assert is_nilpotent(catalog.heisenberg(GF(2)).algebra)
    A = catalog.abelian(QQ, 1).algebra
    assert center(A).is_full()
    S = catalog.direct_sum(catalog.example8(GF(3)), catalog.abelian(GF(3), 1)).algebra
    assert center(S) == S.span([S.e(3)])
    with pytest.raises(ValueError):
        catalog.direct_sum(catalog.example8(GF(3)), catalog.abelian(GF(5), 1))


def test_random_extension_identity_derivation():
    base = catalog.abelian(GF(2), 2)
    I = Matrix.identity(GF(2), 2)
    A = catalog.random_extension(GF(2), base, 0, derivation=I).algebra
    assert A.dim == 3 and is_solvable(A) and not is_nilpotent(A)


def test_random_extension_zero_derivation():
    base = catalog.abelian(GF(3), 2)
    A = catalog.random_extension(GF(3), base, 0, derivation=Matrix.zero(GF(3), 2, 2)).algebra
    assert A.is_abelian()


def test_random_extension_grading_on_heisenberg():
    base = catalog.heisenberg(GF(3))
    D = Matrix.from_rows(GF(3), [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    A = catalog.random_extension(GF(3), base, 0, derivation=D).algebra
    assert A.dim == 4 and is_solvable(A)


def test_random_extension_requires_nilpotent_base():
    with pytest.raises(ValueError):
        catalog.random_extension(GF(3), catalog.example8(GF(3)), 0)


def test_random_extension_seed_determinism():
    a = catalog.random_extension_corpus(range(20))
    b = catalog.random_extension_corpus(range(20))
    assert [e.algebra for e in a] == [e.algebra for e in b]


def test_exhaustive_dim2():
    two = catalog.exhaustive_dim2(2)
    assert len(two) == 13
    assert len(catalog.exhaustive_dim2(3)) == 41
    assert any(e.algebra.is_abelian() for e in two)
    assert [e.algebra for e in two] == [e.algebra for e in catalog.exhaustive_dim2(2)]
    with pytest.raises(ValueError):
        catalog.exhaustive_dim2(5)


def test_registry_lookup():
    assert catalog.get("example17").algebra.dim == 3
    assert catalog.get("gl2", GF(2)).algebra.field == GF(2)
    with pytest.raises(KeyError):
        catalog.get("nope")
