"""Exact computation of Frattini-type subalgebras and ideals of finite-dimensional Leibniz algebras."""

from __future__ import annotations

from .algebra import LeibnizAlgebra, LeibnizIdentityViolation, construct, quotient, series
from .catalog import CatalogEntry
from .engel import engel_subalgebra, find_cartan
from .exactlin import QQ, Field, GF, Matrix, Subspace
from .frattini import frattini_report, is_generalized_frattini, is_primitive_ideal
from .lattice import DEFAULT_BUDGET, EnumBudget, lattice_report
from .verify import STATEMENTS, check, run_suite

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "DEFAULT_BUDGET",
    "EnumBudget",
    "Field",
    "GF",
    "LeibnizAlgebra",
    "LeibnizIdentityViolation",
    "Matrix",
    "QQ",
    "STATEMENTS",
    "Subspace",
    "check",
    "construct",
    "engel_subalgebra",
    "find_cartan",
    "frattini_report",
    "is_generalized_frattini",
    "is_primitive_ideal",
    "lattice_report",
    "quotient",
    "run_suite",
    "series",
]
