"""Cochains on the simplex, their minimality, and cofilling profiles."""

from .bounds import BoundFunction, nested_gromov, parse_bound
from .cochain import (
    Cochain,
    CochainError,
    coboundary,
    delta,
    fill_by_min_link,
    is_coboundary,
    is_cocycle,
    link,
    lk,
    normalized_size,
)
from .minimality import (
    CosetTooLarge,
    is_minimal,
    is_minimal_exact,
    minimize_in_class,
    necessary_conditions,
    seidel_switch,
)
from .profile import BudgetExceeded, profile_exact

__all__ = [
    "BoundFunction", "BudgetExceeded", "Cochain", "CochainError", "CosetTooLarge",
    "coboundary", "delta", "fill_by_min_link", "is_coboundary", "is_cocycle",
    "is_minimal", "is_minimal_exact", "link", "lk", "minimize_in_class",
    "necessary_conditions", "nested_gromov", "normalized_size", "parse_bound",
    "profile_exact", "seidel_switch",
]
