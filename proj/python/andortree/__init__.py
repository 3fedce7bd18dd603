"""Exact expected-cost analysis of querying strategies on AND-OR trees.

Trees are written as s-expressions over exact rationals, e.g.
``(and (or 1/2) (or 1/2 1/2))``.  Every cost crosses the boundary as an
exact ``"a/b"`` string; use :func:`fraction` to turn one into a
:class:`fractions.Fraction`.
"""

from fractions import Fraction

from ._core import (
    Instance,
    TreeDomainError,
    TreeParseError,
    TreeStructureError,
    case_identity_report,
    expected_cost,
    gap_search_report,
    h3_demo_report,
    is_depth_first,
    is_directional,
    optimal_cost,
    optimal_depth_first_cost,
    optimal_first_probes,
    parse_tree,
    solve_cost,
    solve_plan,
    solve_strategy,
    validate,
    verify_report,
)

__all__ = [
    "Fraction",
    "Instance",
    "TreeDomainError",
    "TreeParseError",
    "TreeStructureError",
    "case_identity_report",
    "expected_cost",
    "fraction",
    "gap_search_report",
    "h3_demo_report",
    "is_depth_first",
    "is_directional",
    "optimal_cost",
    "optimal_depth_first_cost",
    "optimal_first_probes",
    "parse_tree",
    "solve_cost",
    "solve_plan",
    "solve_strategy",
    "validate",
    "verify_report",
]

__version__ = "0.1.0"


def fraction(cost: str) -> Fraction:
    """Convert an exact cost string like ``"7/4"`` into a Fraction."""
    return Fraction(cost)
