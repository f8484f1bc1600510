"""Two-phase primal simplex on a dense exact-rational tableau.

Pivoting follows Bland's rule in both phases (lowest-index entering column
with negative reduced cost, ratio ties broken by lowest basic index), which
guarantees termination on degenerate problems. Arithmetic uses ``gmpy2.mpq``
internally; results are returned as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from cliqueflow.lp.model import LinearProgram, LpSolution, Relation, Status

_ZERO = mpq(0)


def _to_fraction(q: mpq) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    def __init__(self, rows: list[list[mpq]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int, cost: list[mpq]) -> None:
        prow = self.rows[r]
        inv = 1 / prow[c]
        nz = [j for j, a in enumerate(prow) if a]
        for j in nz:
            prow[j] *= inv
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = cost[c]
        if f:
            for j in nz:
                cost[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def entering(self, cost: list[mpq], allowed: int) -> int | None:
        for j in range(allowed):
            if cost[j] < 0:
                return j
        return None

    def leaving(self, c: int) -> int | None:
        best = None
        best_ratio = None
        for i, row in enumerate(self.rows):
            a = row[c]
            if a > 0:
                ratio = row[-1] / a
                if (
                    best is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best])
                ):
                    best, best_ratio = i, ratio
        return best

    def run(self, cost: list[mpq], allowed: int) -> bool:
        """Iterate to optimality; return False if the objective is unbounded."""
        while True:
            c = self.entering(cost, allowed)
            if c is None:
                return True
            r = self.leaving(c)
            if r is None:
                return False
            self.pivot(r, c, cost)

    def reduced_costs(self, c: list[mpq]) -> list[mpq]:
        cost = list(c) + [_ZERO]
        for i, row in enumerate(self.rows):
            cb = c[self.basis[i]]
            if cb:
                for j, a in enumerate(row):
                    if a:
                        cost[j] -= cb * a
        return cost


def solve_lp(lp: LinearProgram) -> LpSolution:
    nvar = len(lp.variables)
    # Column layout: structural | slack/surplus | artificial.
    specs = []
    for con in lp.constraints:
        coeffs = [_ZERO] * nvar
        for v, a in con.terms:
            coeffs[lp.index(v)] += mpq(a)
        rhs = mpq(con.rhs)
        rel = con.relation
        if rhs < 0:
            coeffs = [-a for a in coeffs]
            rhs = -rhs
            rel = {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(rel, rel)
        if rel is Relation.GE and rhs == 0:
            coeffs = [-a for a in coeffs]
            rel = Relation.LE
        specs.append((coeffs, rel, rhs))

    nslack = sum(1 for _, rel, _ in specs if rel is not Relation.EQ)
    nart = sum(1 for _, rel, rhs in specs if rel is not Relation.LE)
    first_slack = nvar
    first_art = nvar + nslack
    ncols = first_art + nart

    rows: list[list[mpq]] = []
    basis: list[int] = []
    s = first_slack
    a = first_art
    for coeffs, rel, rhs in specs:
        row = coeffs + [_ZERO] * (nslack + nart) + [rhs]
        if rel is Relation.LE:
            row[s] = mpq(1)
            basis.append(s)
            s += 1
        else:
            if rel is Relation.GE:
                row[s] = mpq(-1)
                s += 1
            row[a] = mpq(1)
            basis.append(a)
            a += 1
        rows.append(row)

    tab = _Tableau(rows, basis, ncols)

    if nart:
        phase1 = [_ZERO] * first_art + [mpq(1)] * nart
        cost = tab.reduced_costs(phase1)
        tab.run(cost, ncols)
        if cost[-1] != 0:
            return LpSolution(Status.INFEASIBLE)
        # Drive zero-level artificials out of the basis; drop redundant rows.
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= first_art:
                row = tab.rows[i]
                j = next((j for j in range(first_art) if row[j]), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j, cost)
            i += 1

    c = [_ZERO] * ncols
    for v, coef in lp.objective:
        c[lp.index(v)] += mpq(coef)
    cost = tab.reduced_costs(c)
    if not tab.run(cost, first_art):
        return LpSolution(Status.UNBOUNDED)

    values = [_ZERO] * nvar
    for i, j in enumerate(tab.basis):
        if j < nvar:
            values[j] = tab.rows[i][-1]
    assignment = {v: _to_fraction(values[i]) for i, v in enumerate(lp.variables)}
    value = lp.offset + _to_fraction(-cost[-1])
    return LpSolution(Status.OPTIMAL, value, assignment)
