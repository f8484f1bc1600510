"""Brute-force LP oracle: enumerate every basic solution of the equality form.

Independent of the simplex code path. The feasible region ``{Ax = b, x >= 0}``
is pointed, so a bounded LP attains its minimum at a basic feasible solution.
Unboundedness is decided separately by enumerating the extreme rays, i.e.
the basic feasible solutions of ``{Ad = 0, sum(d) = 1, d >= 0}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from gmpy2 import mpq

from cliqueflow.errors import LimitExceeded
from cliqueflow.lp.model import LinearProgram, LpSolution, Relation, Status

BRUTE_FORCE_CAP = 14


def _to_fraction(q: mpq) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _equality_form(lp: LinearProgram) -> tuple[list[list[mpq]], list[mpq], int]:
    nvar = len(lp.variables)
    nslack = sum(1 for con in lp.constraints if con.relation is not Relation.EQ)
    a_rows: list[list[mpq]] = []
    b: list[mpq] = []
    s = nvar
    for con in lp.constraints:
        row = [mpq(0)] * (nvar + nslack)
        for v, c in con.terms:
            row[lp.index(v)] += mpq(c)
        if con.relation is Relation.LE:
            row[s] = mpq(1)
            s += 1
        elif con.relation is Relation.GE:
            row[s] = mpq(-1)
            s += 1
        a_rows.append(row)
        b.append(mpq(con.rhs))
    return a_rows, b, nvar + nslack


def _row_reduce(a_rows: list[list[mpq]], b: list[mpq]) -> tuple[list[list[mpq]], list[mpq]] | None:
    """Gauss-Jordan on ``[A | b]``; drop dependent rows, ``None`` if inconsistent."""
    rows = [list(r) + [rhs] for r, rhs in zip(a_rows, b)]
    ncols = len(rows[0]) - 1 if rows else 0
    rank = 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[c]
        rows[rank] = prow = [x * inv for x in prow]
        for i, row in enumerate(rows):
            if i != rank and row[c]:
                f = row[c]
                rows[i] = [x - f * y for x, y in zip(row, prow)]
        rank += 1
    if any(row[-1] for row in rows[rank:]):
        return None
    kept = rows[:rank]
    return [row[:-1] for row in kept], [row[-1] for row in kept]


def _basic_feasible(a_rows: list[list[mpq]], b: list[mpq], ncols: int) -> Iterator[dict[int, mpq]]:
    """Yield every basic feasible solution as ``{column: value}`` (support only).

    Depth-first over increasing column subsets with incremental elimination:
    a column dependent on the ones already chosen prunes its whole subtree.
    """
    m = len(a_rows)
    if m == 0:
        yield {}
        return
    columns = [[a_rows[i][j] for i in range(m)] for j in range(ncols)]
    chosen: list[int] = []
    # For chosen column t: reduced vector, its pivot row, and the multipliers
    # expressing the original column as reduced + sum(mu[s] * reduced[s]).
    reduced: list[list[mpq]] = []
    pivot_rows: list[int] = []
    mus: list[list[mpq]] = []

    def solve() -> list[mpq]:
        rhs = list(b)
        lam = []
        for u, p in zip(reduced, pivot_rows):
            f = rhs[p] / u[p]
            lam.append(f)
            if f:
                rhs = [x - f * y for x, y in zip(rhs, u)]
        x = [mpq(0)] * m
        for s in range(m - 1, -1, -1):
            acc = lam[s]
            for t in range(s + 1, m):
                acc -= x[t] * mus[t][s]
            x[s] = acc
        return x

    def dfs(start: int) -> Iterator[dict[int, mpq]]:
        depth = len(chosen)
        if depth == m:
            x = solve()
            if all(v >= 0 for v in x):
                yield {j: v for j, v in zip(chosen, x)}
            return
        for j in range(start, ncols - (m - depth) + 1):
            v = list(columns[j])
            mu = []
            for u, p in zip(reduced, pivot_rows):
                f = v[p] / u[p]
                mu.append(f)
                if f:
                    v = [x - f * y for x, y in zip(v, u)]
            p = next((i for i, x in enumerate(v) if x), None)
            if p is None:
                continue
            chosen.append(j)
            reduced.append(v)
            pivot_rows.append(p)
            mus.append(mu)
            yield from dfs(j + 1)
            chosen.pop()
            reduced.pop()
            pivot_rows.pop()
            mus.pop()

    yield from dfs(0)


def brute_force_lp_vertices(lp: LinearProgram, cap: int = BRUTE_FORCE_CAP) -> LpSolution:
    size = len(lp.variables) + len(lp.constraints)
    if size > cap:
        raise LimitExceeded(
            f"vertex enumeration refused: {len(lp.variables)} variables + "
            f"{len(lp.constraints)} constraints = {size} > cap {cap}"
        )
    a_rows, b, ncols = _equality_form(lp)
    cost = [mpq(0)] * ncols
    for v, c in lp.objective:
        cost[lp.index(v)] += mpq(c)

    reduced = _row_reduce(a_rows, b)
    if reduced is None:
        return LpSolution(Status.INFEASIBLE)
    best = None
    best_value = None
    for bfs in _basic_feasible(*reduced, ncols):
        value = sum((cost[j] * x for j, x in bfs.items()), mpq(0))
        if best is None or value < best_value:
            best, best_value = bfs, value
    if best is None:
        return LpSolution(Status.INFEASIBLE)

    # With a nonnegative cost vector the objective is bounded below by zero.
    if any(c < 0 for c in cost):
        ray_rows = [list(r) for r in a_rows] + [[mpq(1)] * ncols]
        ray_rhs = [mpq(0)] * len(a_rows) + [mpq(1)]
        ray_system = _row_reduce(ray_rows, ray_rhs)
        if ray_system is not None:
            for ray in _basic_feasible(*ray_system, ncols):
                if sum((cost[j] * x for j, x in ray.items()), mpq(0)) < 0:
                    return LpSolution(Status.UNBOUNDED)

    assignment = {v: _to_fraction(best.get(i, mpq(0))) for i, v in enumerate(lp.variables)}
    return LpSolution(Status.OPTIMAL, lp.offset + _to_fraction(best_value), assignment)
