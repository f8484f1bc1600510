"""Simple undirected graphs, DIMACS I/O, generators and exact clique oracles.

Vertices are ``0..n-1`` internally. DIMACS text is 1-indexed; the shift
happens only in :func:`parse_dimacs` and :func:`write_dimacs`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from cliqueflow.errors import LimitExceeded

Edge = tuple[int, int]

ENUMERATION_CAP = 7


class DimacsError(ValueError):
    """Malformed DIMACS input; the message names the offending line."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            normalized.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Graph:
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour sets as bitmasks, one int per vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def edges_within(self, vertices: Iterable[int]) -> int:
        vs = list(vertices)
        mask = 0
        for v in vs:
            mask |= 1 << v
        return sum((self.adjacency[v] & mask).bit_count() for v in vs) // 2

    def incident_edges(self, vertices: Iterable[int]) -> int:
        """Number of edges with at least one endpoint in ``vertices``."""
        vs = set(vertices)
        return sum(1 for u, v in self.edges if u in vs or v in vs)


@dataclass(frozen=True)
class CliqueWitness:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def verify(self, g: Graph) -> bool:
        vs = sorted(self.vertices)
        if any(not 0 <= v < g.n for v in vs):
            return False
        return all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def parse_dimacs(text: str) -> Graph:
    n = declared_m = None
    edges: set[Edge] = set()
    edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if n is None:
            if tag != "p":
                raise DimacsError(lineno, "expected 'p edge <n> <m>' header before edges")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(lineno, f"malformed header {raw.strip()!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(lineno, f"non-integer counts in header {raw.strip()!r}") from None
            if n < 0 or declared_m < 0:
                raise DimacsError(lineno, "negative counts in header")
            continue
        if tag == "p":
            raise DimacsError(lineno, "duplicate 'p' header")
        if tag != "e" or len(parts) != 3:
            raise DimacsError(lineno, f"unrecognised line {raw.strip()!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise DimacsError(lineno, f"non-integer vertex in {raw.strip()!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise DimacsError(lineno, f"vertex index out of range 1..{n}")
        if u == v:
            raise DimacsError(lineno, f"self-loop on vertex {u}")
        edges.add((min(u, v) - 1, max(u, v) - 1))
        edge_lines += 1
    if n is None:
        raise DimacsError(0, "missing 'p edge <n> <m>' header")
    # Declared m may count either distinct edges or raw lines (duplicates included).
    if declared_m not in (len(edges), edge_lines):
        raise DimacsError(0, f"header declares {declared_m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges))


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges)
    return "\n".join(lines)


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, frozenset(edges))


def gen_planted_clique(n: int, k: int, p: float, seed: int) -> tuple[Graph, CliqueWitness]:
    """G(n, p) with a clique planted on ``k`` vertices chosen by the seed."""
    if not 2 <= k <= n:
        raise ValueError(f"planted clique size must satisfy 2 <= k <= n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    members = sorted(rng.sample(range(n), k))
    edges = set(itertools.combinations(members, 2))
    for e in itertools.combinations(range(n), 2):
        # Draw for every pair so the background does not depend on the planted set.
        if rng.random() < p:
            edges.add(e)
    return Graph(n, frozenset(edges)), CliqueWitness(frozenset(members))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_clique_bruteforce(g: Graph) -> tuple[int, CliqueWitness]:
    """Exact maximum clique by Bron-Kerbosch with pivoting and a size bound."""
    if g.n == 0:
        return 0, CliqueWitness(frozenset())
    adj = g.adjacency
    best = [1 << 0]

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x and r.bit_count() > best[0].bit_count():
                best[0] = r
            return
        if r.bit_count() + p.bit_count() <= best[0].bit_count():
            return
        pivot = max(_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in _bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << g.n) - 1, 0)
    members = frozenset(_bits(best[0]))
    return len(members), CliqueWitness(members)


def has_clique(g: Graph, k: int) -> CliqueWitness | None:
    """Return the lexicographically first ``k``-clique, or ``None``."""
    if k < 1:
        raise ValueError(f"clique size must be at least 1, got {k}")
    if k > g.n:
        return None
    adj = g.adjacency

    def extend(chosen: list[int], candidates: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        while candidates:
            if len(chosen) + candidates.bit_count() < k:
                return None
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            found = extend(chosen + [v], candidates & adj[v])
            if found is not None:
                return found
        return None

    found = extend([], (1 << g.n) - 1)
    return None if found is None else CliqueWitness(frozenset(found))


def enumerate_graphs(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """Yield every labeled graph on ``n`` vertices, ordered by edge bitmask."""
    if n > cap:
        raise LimitExceeded(
            f"refusing to enumerate graphs on n={n} > cap {cap} "
            f"({2 ** (n * (n - 1) // 2)} graphs)"
        )
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(pairs[i] for i in _bits(mask)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
