"""Node-interdiction integer program for the clique reduction and its strengthened LP.

Variables per vertex ``i``: ``g_i`` (flow survives through ``i``) and ``b_i``
(``i`` is interdicted); per edge ``{u, v}``: ``bp_u_v`` (both endpoints
interdicted, so the shared edge node is paid for once). Rows:

* ``budget``:   sum(deg(i) * b_i) - sum(bp_u_v) <= r
* ``pair_u_v``: b_u + b_v - 2 bp_u_v >= 0
* ``cover_i``:  g_i + b_i >= 1
* ``cut``:      sum(g_i) >= k            (LP only)

The objective is ``sum(g_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from cliqueflow.errors import LimitExceeded
from cliqueflow.graph_core import Graph
from cliqueflow.lp import (
    Constraint,
    LinearProgram,
    Relation,
    Status,
    format_lp,
    solve_lp,
)

IP_ENUMERATION_CAP = 22
RAW_BINARY_CAP = 18


def gamma(v: int) -> str:
    return f"g_{v}"


def beta(v: int) -> str:
    return f"b_{v}"


def pair(u: int, v: int) -> str:
    u, v = min(u, v), max(u, v)
    return f"bp_{u}_{v}"


@dataclass(frozen=True)
class SlpInstance:
    """The integer program for ``(graph, k, r)``; ``integer=False`` marks the SLP."""

    graph: Graph
    k: int
    r: int
    integer: bool = True

    @property
    def costs(self) -> tuple[int, ...]:
        return tuple(self.graph.degree(v) for v in range(self.graph.n))

    @property
    def gamma_vars(self) -> tuple[str, ...]:
        return tuple(gamma(v) for v in range(self.graph.n))

    @property
    def beta_vars(self) -> tuple[str, ...]:
        return tuple(beta(v) for v in range(self.graph.n))

    @property
    def pair_vars(self) -> tuple[str, ...]:
        return tuple(pair(u, v) for u, v in self.graph.sorted_edges)

    def rows(self) -> list[Constraint]:
        g = self.graph
        budget = {beta(v): c for v, c in zip(range(g.n), self.costs)}
        budget.update({pair(u, v): -1 for u, v in g.sorted_edges})
        rows = [Constraint.build(budget, Relation.LE, self.r, "budget")]
        for u, v in g.sorted_edges:
            rows.append(
                Constraint.build(
                    {beta(u): 1, beta(v): 1, pair(u, v): -2}, Relation.GE, 0, f"pair_{u}_{v}"
                )
            )
        for v in range(g.n):
            rows.append(Constraint.build({gamma(v): 1, beta(v): 1}, Relation.GE, 1, f"cover_{v}"))
        if not self.integer:
            rows.append(
                Constraint.build({x: 1 for x in self.gamma_vars}, Relation.GE, self.k, "cut")
            )
        return rows

    def linear_program(self) -> LinearProgram:
        """Continuous program: the SLP, or the plain relaxation in integer mode."""
        variables = self.gamma_vars + self.beta_vars + self.pair_vars
        return LinearProgram.build(variables, {x: 1 for x in self.gamma_vars}, self.rows(), name="flow")

    def to_text(self) -> str:
        variables = self.gamma_vars + self.beta_vars + self.pair_vars
        kind = "IP" if self.integer else "SLP"
        header = f"{kind} for n={self.graph.n} m={self.graph.m} k={self.k} r={self.r}"
        return format_lp(self.linear_program(), binaries=variables if self.integer else (), comment=header)


@dataclass(frozen=True)
class IpSolution:
    value: int
    interdicted: frozenset[int]
    cost: int


def _check_budget(r: int) -> None:
    if r < 0:
        raise ValueError(f"interdiction budget must be nonnegative, got {r}; no clique is possible")


def build_ip(g: Graph, k: int, r: int) -> SlpInstance:
    _check_budget(r)
    return SlpInstance(g, k, r, integer=True)


def build_slp(g: Graph, k: int, r: int) -> LinearProgram:
    _check_budget(r)
    return SlpInstance(g, k, r, integer=False).linear_program()


def interdiction_cost(g: Graph, interdicted) -> int:
    """Edges incident to the set, i.e. sum of degrees minus edges inside it."""
    s = set(interdicted)
    return sum(g.degree(v) for v in s) - g.edges_within(s)


def solve_ip_exact(g: Graph, r: int, cap: int = IP_ENUMERATION_CAP) -> IpSolution:
    """Exact IP optimum by enumerating the surviving vertex set.

    Survivor sets ``T`` are tried by increasing size in lexicographic order;
    the first with ``|E(T)| >= |E| - r`` (interdicting the rest costs at most
    ``r``) is optimal, since the objective is ``|T|``.
    """
    _check_budget(r)
    if g.n > cap:
        raise LimitExceeded(f"IP enumeration refused: n={g.n} > cap {cap}")
    need = g.m - r
    adj = g.adjacency
    everyone = frozenset(range(g.n))
    for size in range(g.n + 1):
        if size * (size - 1) // 2 < need:
            continue
        for survivors in itertools.combinations(range(g.n), size):
            mask = 0
            for v in survivors:
                mask |= 1 << v
            inside = sum((adj[v] & mask).bit_count() for v in survivors) // 2
            if inside >= need:
                s = everyone.difference(survivors)
                return IpSolution(size, s, g.m - inside)
    raise AssertionError("interdicting nothing is always within a nonnegative budget")


def solve_ip_raw_binaries(inst: SlpInstance, cap: int = RAW_BINARY_CAP) -> int:
    """IP optimum by brute force over every 0/1 assignment of the raw variables.

    Independent cross-check of :func:`solve_ip_exact` for tiny graphs: it
    reads the generic rows and never uses the survivor-set argument.
    """
    lp = inst.linear_program()
    nvars = len(lp.variables)
    if nvars > cap:
        raise LimitExceeded(f"raw binary enumeration refused: {nvars} variables > cap {cap}")
    obj = [lp.index(v) for v, _ in lp.objective]
    rows = [
        ([(lp.index(v), int(c)) for v, c in con.terms], con.relation, int(con.rhs))
        for con in lp.constraints
    ]
    best = None
    for bits in itertools.product((0, 1), repeat=nvars):
        ok = True
        for terms, rel, rhs in rows:
            lhs = sum(c * bits[i] for i, c in terms)
            if (rel is Relation.LE and lhs > rhs) or (rel is Relation.GE and lhs < rhs):
                ok = False
                break
        if ok:
            value = sum(bits[i] for i in obj)
            if best is None or value < best:
                best = value
    assert best is not None
    return best


@lru_cache(maxsize=1 << 17)
def solve_slp(g: Graph, k: int, r: int) -> Fraction:
    """Exact optimum of the SLP for ``(g, k, r)``."""
    sol = solve_lp(build_slp(g, k, r))
    if sol.status is not Status.OPTIMAL:
        raise ValueError(f"SLP for n={g.n}, k={k}, r={r} is {sol.status.value}")
    return sol.value
