"""LP-based decision procedures: interdiction decision, clique decision, max-clique loop.

Each procedure answers "yes" exactly when the strengthened LP optimum equals
``k`` as a rational; there is no tolerance anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from cliqueflow.graph_core import Graph
from cliqueflow.reduction import budget_for
from cliqueflow.slp_model import solve_slp


class Rationale(str, enum.Enum):
    SLP_EQUALS_K = "SlpEqualsK"
    SLP_EXCEEDS_K = "SlpExceedsK"
    BUDGET_NEGATIVE = "BudgetNegative"
    TRIVIAL_SMALL_K = "TrivialSmallK"
    EMPTY_GRAPH = "EmptyGraph"


YES_RATIONALES = frozenset({Rationale.SLP_EQUALS_K, Rationale.TRIVIAL_SMALL_K})


@dataclass(frozen=True)
class DecisionVerdict:
    answer: bool
    slp_value: Fraction | None
    k: int
    r: int
    rationale: Rationale

    def __post_init__(self) -> None:
        if self.answer != (self.rationale in YES_RATIONALES):
            raise ValueError(f"answer {self.answer} inconsistent with rationale {self.rationale.value}")
        if self.rationale is Rationale.SLP_EQUALS_K and self.slp_value != self.k:
            raise ValueError("SlpEqualsK verdict must carry slp_value == k")

    def to_dict(self) -> dict:
        v = self.slp_value
        return {
            "answer": "yes" if self.answer else "no",
            "slp_value": None if v is None else f"{v.numerator}/{v.denominator}",
            "k": self.k,
            "r": self.r,
            "rationale": self.rationale.value,
        }


def poly_mfnip_decide(g: Graph, k: int, r: int) -> DecisionVerdict:
    """Can interdicting within budget ``r`` leave max flow ``k``? Yes iff SLP == k."""
    if r < 0:
        raise ValueError(f"interdiction budget must be nonnegative, got {r}")
    if k < 0:
        raise ValueError(f"target flow must be nonnegative, got {k}")
    value = solve_slp(g, k, r)
    if value == k:
        return DecisionVerdict(True, value, k, r, Rationale.SLP_EQUALS_K)
    return DecisionVerdict(False, value, k, r, Rationale.SLP_EXCEEDS_K)


def clique_decide(g: Graph, k: int) -> DecisionVerdict:
    if k < 0:
        raise ValueError(f"clique size must be nonnegative, got {k}")
    if k <= 1:
        # Sizes 0 and 1 need no model: the empty set always, a vertex iff one exists.
        if k > g.n:
            return DecisionVerdict(False, None, k, g.m, Rationale.EMPTY_GRAPH)
        return DecisionVerdict(True, None, k, g.m, Rationale.TRIVIAL_SMALL_K)
    r = budget_for(g, k)
    if r < 0:
        return DecisionVerdict(False, None, k, r, Rationale.BUDGET_NEGATIVE)
    return poly_mfnip_decide(g, k, r)


def largest_admissible_k(g: Graph) -> int:
    """Largest ``k <= n`` with ``C(k, 2) <= |E|``; every larger probe has negative budget."""
    k = 1
    while k + 1 <= g.n and (k + 1) * k // 2 <= g.m:
        k += 1
    return min(k, g.n)


def max_clique_lp(g: Graph) -> tuple[int, list[DecisionVerdict]]:
    """Probe ``k`` downward and return the first ``k`` the clique decision accepts.

    The loop starts at :func:`largest_admissible_k` instead of ``|E|``; the
    skipped probes would all be budget-negative "no" answers.
    """
    if g.n < 1:
        raise ValueError("max_clique_lp needs at least one vertex")
    trace: list[DecisionVerdict] = []
    for k in range(largest_admissible_k(g), 1, -1):
        verdict = clique_decide(g, k)
        trace.append(verdict)
        if verdict.answer:
            return k, trace
    trace.append(clique_decide(g, 1))
    return 1, trace
