"""Layered interdiction network built from a clique instance, plus exact solvers.

Node layout: source ``0``, one edge node per graph edge (sorted order), one
vertex node per graph vertex, then the sink. Arc layout: source arcs first
(one per edge node, capacity 2, the only interdictable arcs), then two
capacity-1 arcs per edge node to its endpoints, then one capacity-1 arc per
vertex node to the sink. Every arc has interdiction cost 1.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from cliqueflow.errors import LimitExceeded
from cliqueflow.graph_core import Graph
from cliqueflow.lp import Constraint, LinearProgram, Relation, format_lp

INTERDICTION_CAP = 22


class Layer(str, enum.Enum):
    SOURCE = "source"
    EDGE = "edge"
    VERTEX = "vertex"
    SINK = "sink"


_NEXT_LAYER = {Layer.SOURCE: Layer.EDGE, Layer.EDGE: Layer.VERTEX, Layer.VERTEX: Layer.SINK}


@dataclass(frozen=True)
class Node:
    layer: Layer
    ref: tuple[int, int] | int | None = None


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    interdiction_cost: int = 1
    interdictable: bool = False


@dataclass(frozen=True)
class InterdictionNetwork:
    nodes: tuple[Node, ...]
    arcs: tuple[Arc, ...]

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return len(self.nodes) - 1

    def interdictable_arcs(self) -> list[int]:
        return [i for i, a in enumerate(self.arcs) if a.interdictable]

    def check_structure(self) -> None:
        """Raise ``ValueError`` unless the layering invariants hold."""
        layers = [node.layer for node in self.nodes]
        if layers.count(Layer.SOURCE) != 1 or layers.count(Layer.SINK) != 1:
            raise ValueError("network needs exactly one source and one sink")
        if layers[self.source] is not Layer.SOURCE or layers[self.sink] is not Layer.SINK:
            raise ValueError("source must be node 0 and sink the last node")
        out_arcs = [[] for _ in self.nodes]
        in_arcs = [[] for _ in self.nodes]
        for i, arc in enumerate(self.arcs):
            tail, head = layers[arc.tail], layers[arc.head]
            if _NEXT_LAYER.get(tail) is not head:
                raise ValueError(f"arc {i} jumps from {tail.value} to {head.value}")
            if arc.interdictable != (tail is Layer.SOURCE):
                raise ValueError(f"arc {i}: only source arcs may be interdicted")
            if arc.interdiction_cost != 1:
                raise ValueError(f"arc {i}: interdiction cost must be 1")
            out_arcs[arc.tail].append(arc)
            in_arcs[arc.head].append(arc)
        for v, layer in enumerate(layers):
            if layer is Layer.EDGE:
                if len(in_arcs[v]) != 1 or in_arcs[v][0].capacity != 2:
                    raise ValueError(f"edge node {v} needs one incoming arc of capacity 2")
                if len(out_arcs[v]) != 2 or any(a.capacity != 1 for a in out_arcs[v]):
                    raise ValueError(f"edge node {v} needs two outgoing arcs of capacity 1")
            elif layer is Layer.VERTEX:
                if len(out_arcs[v]) != 1 or out_arcs[v][0].capacity != 1:
                    raise ValueError(f"vertex node {v} needs one outgoing arc of capacity 1")

    def summary(self) -> dict:
        counts = {layer.value: 0 for layer in Layer}
        for node in self.nodes:
            counts[node.layer.value] += 1
        return {
            "nodes": len(self.nodes),
            "arcs": len(self.arcs),
            "layers": counts,
            "interdictable_arcs": len(self.interdictable_arcs()),
            "capacity_from_source": sum(a.capacity for a in self.arcs if a.tail == self.source),
        }


@dataclass(frozen=True)
class InterdictionPlan:
    interdicted_arcs: frozenset[int] = frozenset()
    total_cost: int = 0

    @classmethod
    def of(cls, net: InterdictionNetwork, arcs: Iterable[int]) -> InterdictionPlan:
        chosen = frozenset(arcs)
        for i in chosen:
            if not 0 <= i < len(net.arcs):
                raise ValueError(f"arc {i} does not exist")
            if not net.arcs[i].interdictable:
                raise ValueError(f"arc {i} is not interdictable")
        return cls(chosen, sum(net.arcs[i].interdiction_cost for i in chosen))


EMPTY_PLAN = InterdictionPlan()


def build_wood_reduction(g: Graph) -> InterdictionNetwork:
    if g.n < 1:
        raise ValueError("reduction needs at least one vertex")
    edges = g.sorted_edges
    nodes = [Node(Layer.SOURCE)]
    nodes += [Node(Layer.EDGE, e) for e in edges]
    nodes += [Node(Layer.VERTEX, v) for v in range(g.n)]
    nodes.append(Node(Layer.SINK))
    sink = len(nodes) - 1

    def vertex_node(v: int) -> int:
        return 1 + len(edges) + v

    arcs = [Arc(0, 1 + i, 2, interdictable=True) for i in range(len(edges))]
    for i, (u, v) in enumerate(edges):
        arcs.append(Arc(1 + i, vertex_node(u), 1))
        arcs.append(Arc(1 + i, vertex_node(v), 1))
    arcs += [Arc(vertex_node(v), sink, 1) for v in range(g.n)]
    return InterdictionNetwork(tuple(nodes), tuple(arcs))


def budget_for(g: Graph, k: int) -> int:
    """Arcs to interdict so that exactly a ``k``-clique's worth of edges survives.

    Negative when the graph has fewer than ``C(k, 2)`` edges.
    """
    if k < 2:
        raise ValueError(f"budget is defined for k >= 2, got {k}")
    return g.m - k * (k - 1) // 2


@dataclass(frozen=True)
class FlowResult:
    """Max-flow value with its certificates: per-arc flow and a minimum cut."""

    value: int
    flows: tuple[int, ...]
    source_side: frozenset[int]

    def cut_capacity(self, net: InterdictionNetwork, plan: InterdictionPlan) -> int:
        return sum(
            a.capacity
            for i, a in enumerate(net.arcs)
            if i not in plan.interdicted_arcs and a.tail in self.source_side and a.head not in self.source_side
        )


def max_flow_certified(net: InterdictionNetwork, plan: InterdictionPlan = EMPTY_PLAN) -> FlowResult:
    """Shortest-augmenting-path max flow on the network minus the plan's arcs."""
    removed = plan.interdicted_arcs
    for i in removed:
        if not 0 <= i < len(net.arcs):
            raise ValueError(f"plan references missing arc {i}")
    n = len(net.nodes)
    # Residual graph as parallel arrays; residual edge 2i is arc i, 2i+1 its reverse.
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(n)]
    for i, arc in enumerate(net.arcs):
        c = 0 if i in removed else arc.capacity
        out[arc.tail].append(len(head))
        head.append(arc.head)
        cap.append(c)
        out[arc.head].append(len(head))
        head.append(arc.tail)
        cap.append(0)
    s, t = net.source, net.sink
    value = 0
    while True:
        via = [-1] * n
        via[s] = -2
        queue = deque([s])
        while queue and via[t] == -1:
            u = queue.popleft()
            for e in out[u]:
                w = head[e]
                if cap[e] > 0 and via[w] == -1:
                    via[w] = e
                    queue.append(w)
        if via[t] == -1:
            break
        push = None
        w = t
        while w != s:
            e = via[w]
            push = cap[e] if push is None else min(push, cap[e])
            w = head[e ^ 1]
        w = t
        while w != s:
            e = via[w]
            cap[e] -= push
            cap[e ^ 1] += push
            w = head[e ^ 1]
        value += push
    flows = tuple(cap[2 * i + 1] for i in range(len(net.arcs)))
    reached = frozenset(v for v in range(n) if via[v] != -1)
    return FlowResult(value, flows, reached)


def max_flow(net: InterdictionNetwork, plan: InterdictionPlan = EMPTY_PLAN) -> int:
    return max_flow_certified(net, plan).value


def solve_interdiction_exact(
    net: InterdictionNetwork, budget: int, cap: int = INTERDICTION_CAP
) -> tuple[int, InterdictionPlan]:
    """Minimum residual max flow over all plans of total cost at most ``budget``.

    Depth-first over the interdictable arcs in index order, pruning any branch
    that would overspend. Deleting arcs never raises the max flow, so only
    maximal affordable plans are evaluated; the first strictly best one wins.
    """
    if budget < 0:
        raise ValueError(f"interdiction budget must be nonnegative, got {budget}")
    candidates = net.interdictable_arcs()
    if len(candidates) > cap:
        raise LimitExceeded(
            f"interdiction enumeration refused: {len(candidates)} interdictable arcs > cap {cap}"
        )
    costs = [net.arcs[i].interdiction_cost for i in candidates]
    best: list = [None, None]

    def visit(pos: int, chosen: list[int], remaining: int) -> None:
        if pos == len(candidates):
            skipped = set(range(len(candidates))) - set(chosen)
            if any(costs[j] <= remaining for j in skipped):
                return
            plan = InterdictionPlan(frozenset(candidates[j] for j in chosen), budget - remaining)
            flow = max_flow(net, plan)
            if best[0] is None or flow < best[0]:
                best[0], best[1] = flow, plan
            return
        if costs[pos] <= remaining:
            chosen.append(pos)
            visit(pos + 1, chosen, remaining - costs[pos])
            chosen.pop()
        visit(pos + 1, chosen, remaining)

    visit(0, [], budget)
    return best[0], best[1]


@dataclass(frozen=True)
class WoodIlpModel:
    """Arc-interdiction ILP text plus the variable and row bookkeeping behind it."""

    text: str
    alpha_vars: tuple[str, ...]
    beta_vars: tuple[str, ...]
    gamma_vars: tuple[str, ...]
    arc_rows: int
    cut_rows: int
    budget_rows: int

    @property
    def constraint_count(self) -> int:
        return self.arc_rows + self.cut_rows + self.budget_rows


def emit_wood_ilp(net: InterdictionNetwork, budget: int) -> WoodIlpModel:
    """Render the min-cut interdiction ILP for ``net``.

    ``a_<node>`` is 1 on the sink side of the cut, ``b_<arc>`` marks a cut arc
    that is interdicted, ``g_<arc>`` a cut arc that is not. Non-interdictable
    arcs keep their ``b`` variable but are fixed to zero in ``Bounds``.
    """
    alphas = tuple(f"a_{v}" for v in range(len(net.nodes)))
    betas = tuple(f"b_{i}" for i in range(len(net.arcs)))
    gammas = tuple(f"g_{i}" for i in range(len(net.arcs)))
    rows = []
    for i, arc in enumerate(net.arcs):
        rows.append(
            Constraint.build(
                {alphas[arc.tail]: 1, alphas[arc.head]: -1, betas[i]: 1, gammas[i]: 1},
                Relation.GE,
                0,
                f"arc_{i}",
            )
        )
    rows.append(Constraint.build({alphas[net.sink]: 1, alphas[net.source]: -1}, Relation.GE, 1, "st"))
    rows.append(
        Constraint.build(
            {betas[i]: a.interdiction_cost for i, a in enumerate(net.arcs)}, Relation.LE, budget, "budget"
        )
    )
    lp = LinearProgram.build(
        alphas + betas + gammas,
        {gammas[i]: a.capacity for i, a in enumerate(net.arcs)},
        rows,
        name="residual",
    )
    fixed = [betas[i] for i, a in enumerate(net.arcs) if not a.interdictable]
    text = format_lp(
        lp,
        binaries=alphas + betas + gammas,
        fixed_zero=fixed,
        comment=f"arc interdiction ILP: {len(net.nodes)} nodes, {len(net.arcs)} arcs, budget {budget}",
    )
    return WoodIlpModel(text, alphas, betas, gammas, len(net.arcs), 1, 1)
