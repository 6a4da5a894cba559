"""Engel subalgebras, Fitting components and Cartan subalgebra search."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import LeibnizAlgebra, is_nilpotent, is_subalgebra, normalizer
from .exactlin import Subspace, Vector, operator_power_stable, vadd


class EngelNotSubalgebra(AssertionError):
    pass


class WitnessNotFound(RuntimeError):
    pass


class CartanSearchFailed(RuntimeError):
    def __init__(self, best: Subspace, tried: int):
        self.best = best
        self.tried = tried
        super().__init__(f"no verified Cartan subalgebra after {tried} Engel computations "
                         f"(best Engel subalgebra has dim {best.dim})")


def fitting(A: LeibnizAlgebra, x: Vector) -> tuple[Subspace, Subspace]:
    """(A_0(x), A_1(x)): Fitting null and one components of L_x."""
    return operator_power_stable(A.left_op(x), max(A.dim, 1))


def engel_subalgebra(A: LeibnizAlgebra, a: Vector) -> Subspace:
    E, _ = fitting(A, a)
    if not is_subalgebra(A, E):
        raise EngelNotSubalgebra(f"E_A({list(a)}) is not closed under the product")
    return E


def _height_combos(rng: random.Random, basis, F, height: int):
    coeffs = [rng.randint(-height, height) for _ in basis]
    if not any(coeffs):
        coeffs[0] = 1
    return tuple(F.red(sum(F(c) * b[k] for c, b in zip(coeffs, basis))) for k in range(len(basis[0])))


def engel_internal_witness(A: LeibnizAlgebra, a: Vector, budget: int = 2000) -> Vector:
    """Some b in E_A(a) with E_A(b) = E_A(a)."""
    E = engel_subalgebra(A, a)
    if E.contains(a):
        return a
    if A.field.is_finite:
        for b in E.elements():
            if engel_subalgebra(A, b) == E:
                return b
        raise WitnessNotFound("no element of E_A(a) has Engel subalgebra E_A(a)")
    rng = random.Random(0)
    candidates = itertools.chain(
        E.basis,
        (vadd(A.field, u, v) for u, v in itertools.combinations(E.basis, 2)),
        (_height_combos(rng, E.basis, A.field, 3) for _ in range(budget)),
    )
    for b in itertools.islice(candidates, budget):
        if engel_subalgebra(A, b) == E:
            return b
    raise WitnessNotFound(f"no witness in E_A(a) after {budget} candidates")


@dataclass
class CartanResult:
    cartan: Subspace
    witness_chain: list = field(default_factory=list)
    verified: bool = False
    engel_computations: int = 0


def is_cartan(A: LeibnizAlgebra, C: Subspace) -> bool:
    """Nilpotent and self-normalizing."""
    return is_subalgebra(A, C) and is_nilpotent(A, C) and normalizer(A, C) == C


def _pool(A: LeibnizAlgebra, E: Subspace, rng: random.Random, height: int):
    basis = E.basis
    if not basis:
        return
    yield from basis
    for u, v in itertools.combinations(basis, 2):
        yield vadd(A.field, u, v)
    while True:
        yield _height_combos(rng, basis, A.field, height)


def find_cartan(A: LeibnizAlgebra, budget: int = 500, seed: int = 0, height: int = 7) -> CartanResult:
    """Descend through Engel subalgebras until a minimal one verifies as Cartan.

    ``budget`` counts Engel subalgebra computations.  Every returned result
    has been checked to be nilpotent and self-normalizing.
    """
    rng = random.Random(seed)
    used = 0
    best = A.full()
    if A.dim == 0 or is_nilpotent(A):
        return CartanResult(A.full(), [], True, 0)
    starts = _pool(A, A.full(), rng, height)
    while used < budget:
        start = next(starts)
        used += 1
        if not any(start):
            continue
        E = engel_subalgebra(A, start)
        chain = [start]
        descended = True
        while descended and used < budget:
            descended = False
            # bounded scan of E for an element with a strictly smaller Engel subalgebra
            local = _pool(A, E, rng, height)
            for c in itertools.islice(local, 2 * E.dim + 10):
                if used >= budget:
                    break
                used += 1
                Ec = engel_subalgebra(A, c)
                if Ec < E:
                    E, descended = Ec, True
                    chain.append(c)
                    break
        if E.dim < best.dim:
            best = E
        if is_cartan(A, E):
            return CartanResult(E, chain, True, used)
    raise CartanSearchFailed(best, used)
