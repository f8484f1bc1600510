"""Exact rational linear programming."""

from cliqueflow.lp.lpformat import LpFormatError, ParsedLp, format_lp, parse_lp
from cliqueflow.lp.model import (
    Constraint,
    LinearProgram,
    LpSolution,
    Rational,
    Relation,
    Status,
    verify_solution,
)
from cliqueflow.lp.simplex import solve_lp
from cliqueflow.lp.vertices import BRUTE_FORCE_CAP, brute_force_lp_vertices

__all__ = [
    "BRUTE_FORCE_CAP",
    "Constraint",
    "LinearProgram",
    "LpFormatError",
    "LpSolution",
    "ParsedLp",
    "Rational",
    "Relation",
    "Status",
    "brute_force_lp_vertices",
    "format_lp",
    "parse_lp",
    "solve_lp",
    "verify_solution",
]
