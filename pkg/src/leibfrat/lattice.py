"""Brute-force subspace, subalgebra and ideal lattices over prime fields.

Everything here is exhaustive: above budget an operation refuses instead
of sampling.  These lists are the ground truth that the cheaper routes in
``engel`` and ``frattini`` are checked against.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .algebra import LeibnizAlgebra, is_ideal, is_nilpotent, is_subalgebra, normalizer
from .exactlin import Field, Subspace


class BudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int, what: str = "subspaces"):
        self.count = count
        self.budget = budget
        super().__init__(f"{count} {what} exceeds budget {budget}")


class WrongField(ValueError):
    pass


@dataclass(frozen=True)
class EnumBudget:
    max_subspaces: int = 200_000
    max_elements: int = 100_000

    def __post_init__(self):
        if self.max_subspaces <= 0 or self.max_elements <= 0:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = EnumBudget()


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def _subspaces_of_dim(F: Field, n: int, k: int) -> Iterator[Subspace]:
    p = F.p
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        # free slots: row r, column c > pivots[r], c not a pivot column
        slots = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivset]
        for fill in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(slots, fill):
                rows[r][c] = x
            yield Subspace(F, n, tuple(tuple(r) for r in rows))


def enumerate_subspaces(p: int, n: int, budget: EnumBudget = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every subspace of GF(p)^n once, ordered by dimension then RREF basis."""
    total = count_subspaces(p, n)
    if total > budget.max_subspaces:
        raise BudgetExceeded(total, budget.max_subspaces)
    F = Field(p)
    for k in range(n + 1):
        yield from sorted(_subspaces_of_dim(F, n, k), key=lambda s: s.basis)


@dataclass(frozen=True)
class LatticeReport:
    subalgebras: tuple
    ideals: tuple
    maximal_subalgebras: tuple
    maximal_ideals: tuple
    minimal_ideals: tuple
    element_count: int


def _maximal(items: list[Subspace], full: Subspace) -> list[Subspace]:
    proper = [s for s in items if s != full]
    return [m for m in proper if not any(m < t for t in proper if t.dim > m.dim)]


def _minimal(items: list[Subspace]) -> list[Subspace]:
    nonzero = [s for s in items if not s.is_zero()]
    return [m for m in nonzero if not any(t < m for t in nonzero if t.dim < m.dim)]


def require_finite(A: LeibnizAlgebra):
    if not A.field.is_finite:
        raise WrongField(f"exhaustive enumeration needs a prime field, got {A.field}")


@functools.lru_cache(maxsize=4096)
def lattice_report(A: LeibnizAlgebra, budget: EnumBudget = DEFAULT_BUDGET) -> LatticeReport:
    require_finite(A)
    subs = []
    ideals = []
    for U in enumerate_subspaces(A.field.p, A.dim, budget):
        if is_subalgebra(A, U):
            subs.append(U)
            if is_ideal(A, U):
                ideals.append(U)
    full = A.full()
    return LatticeReport(
        subalgebras=tuple(subs),
        ideals=tuple(ideals),
        maximal_subalgebras=tuple(_maximal(subs, full)),
        maximal_ideals=tuple(_maximal(ideals, full)),
        minimal_ideals=tuple(_minimal(ideals)),
        element_count=A.field.p ** A.dim,
    )


def is_cartan_in(A: LeibnizAlgebra, K: Subspace, C: Subspace) -> bool:
    """C is a nilpotent subalgebra of K with N_K(C) = C."""
    if not C <= K or not is_subalgebra(A, C) or not is_nilpotent(A, C):
        return False
    return (normalizer(A, C) & K) == C


def cartan_subalgebras_of(A: LeibnizAlgebra, K: Subspace | None = None,
                          budget: EnumBudget = DEFAULT_BUDGET) -> list[Subspace]:
    """All Cartan subalgebras of the ideal (or subalgebra) K, by enumeration."""
    K = A.full() if K is None else K
    rep = lattice_report(A, budget)
    return [C for C in rep.subalgebras if C <= K and is_cartan_in(A, K, C)]
