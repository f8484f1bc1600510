import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliqueflow.errors import LimitExceeded
from cliqueflow.lp import (
    Constraint,
    LinearProgram,
    Relation,
    Status,
    brute_force_lp_vertices,
    solve_lp,
    verify_solution,
)
from cliqueflow.slp_model import build_slp


def lp_x_ge_3():
    return LinearProgram.build(["x"], {"x": 1}, [Constraint.build({"x": 1}, ">=", 3)])


def lp_x_le_minus_1():
    return LinearProgram.build(["x"], {"x": 1}, [Constraint.build({"x": 1}, "<=", -1)])


def lp_simplex_core():
    xs = ["x1", "x2", "x3", "x4"]
    return LinearProgram.build(
        xs, {x: -1 for x in xs}, [Constraint.build({x: 1 for x in xs}, "<=", 1)], offset=4
    )


def beale():
    """Beale's example: cycles under the textbook largest-coefficient rule."""
    xs = ["x4", "x5", "x6", "x7"]
    F = Fraction
    return LinearProgram.build(
        xs,
        {"x4": F(-3, 4), "x5": 20, "x6": F(-1, 2), "x7": 6},
        [
            Constraint.build({"x4": F(1, 4), "x5": -8, "x6": -1, "x7": 9}, "<=", 0),
            Constraint.build({"x4": F(1, 2), "x5": -12, "x6": F(-1, 2), "x7": 3}, "<=", 0),
            Constraint.build({"x6": 1}, "<=", 1),
        ],
    )


def random_lp(rng: random.Random) -> LinearProgram:
    nvar = rng.randint(1, 5)
    ncon = rng.randint(0, 5)
    xs = [f"x{i}" for i in range(nvar)]
    coef = lambda: rng.randint(-5, 5)  # noqa: E731
    constraints = [
        Constraint.build({x: coef() for x in xs}, rng.choice(["<=", ">=", "="]), coef())
        for _ in range(ncon)
    ]
    return LinearProgram.build(xs, {x: coef() for x in xs}, constraints)


def is_vertex(lp: LinearProgram, assignment) -> bool:
    """Support columns of the equality form (slacks included) are linearly independent."""
    columns = []
    for j, v in enumerate(lp.variables):
        if assignment[v]:
            columns.append([dict(con.terms).get(v, Fraction(0)) for con in lp.constraints])
    for i, con in enumerate(lp.constraints):
        if con.relation is not Relation.EQ and con.lhs(assignment) != con.rhs:
            columns.append([Fraction(int(i == r)) for r in range(len(lp.constraints))])
    return _rank(columns) == len(columns)


def _rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class TestSolveLp:
    def test_lower_bound(self):
        sol = solve_lp(lp_x_ge_3())
        assert sol.status is Status.OPTIMAL and sol.value == 3

    def test_infeasible(self):
        assert solve_lp(lp_x_le_minus_1()).status is Status.INFEASIBLE

    def test_simplex_core_with_offset(self):
        sol = solve_lp(lp_simplex_core())
        assert sol.value == 3
        assert sum(sol.assignment.values()) == 1

    def test_unbounded(self):
        lp = LinearProgram.build(["x", "y"], {"x": -1}, [Constraint.build({"x": 1, "y": -1}, "<=", 2)])
        assert solve_lp(lp).status is Status.UNBOUNDED

    def test_no_constraints(self):
        lp = LinearProgram.build(["x", "y"], {"x": 2, "y": 1})
        sol = solve_lp(lp)
        assert sol.value == 0 and sol.assignment == {"x": 0, "y": 0}

    def test_beale_terminates(self):
        sol = solve_lp(beale())
        assert sol.status is Status.OPTIMAL
        assert sol.value == brute_force_lp_vertices(beale()).value == Fraction(-5, 4)
        assert verify_solution(beale(), sol.assignment)

    def test_redundant_equalities(self):
        lp = LinearProgram.build(
            ["x", "y"],
            {"x": 1, "y": 2},
            [
                Constraint.build({"x": 1, "y": 1}, "=", 2),
                Constraint.build({"x": 2, "y": 2}, "=", 4),
                Constraint.build({"x": 1}, "<=", 1),
            ],
        )
        sol = solve_lp(lp)
        assert sol.value == 3 == brute_force_lp_vertices(lp).value
        assert sol.assignment == {"x": 1, "y": 1}

    def test_inconsistent_equalities(self):
        lp = LinearProgram.build(
            ["x"], {"x": 1}, [Constraint.build({"x": 1}, "=", 1), Constraint.build({"x": 2}, "=", 3)]
        )
        assert solve_lp(lp).status is Status.INFEASIBLE
        assert brute_force_lp_vertices(lp).status is Status.INFEASIBLE

    def test_rational_answer(self):
        lp = LinearProgram.build(
            ["x", "y"],
            {"x": -1, "y": -1},
            [Constraint.build({"x": 3, "y": 1}, "<=", 2), Constraint.build({"x": 1, "y": 3}, "<=", 2)],
        )
        sol = solve_lp(lp)
        assert sol.value == Fraction(-1)
        assert sol.assignment == {"x": Fraction(1, 2), "y": Fraction(1, 2)}

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            Constraint.build({"x": 0.5}, "<=", 1)


class TestVerifySolution:
    def test_optimal_point_verifies(self):
        lp = lp_simplex_core()
        assert verify_solution(lp, solve_lp(lp).assignment)

    def test_tiny_violation_detected(self):
        lp = lp_x_ge_3()
        assert not verify_solution(lp, {"x": Fraction(3) - Fraction(1, 10**9)})
        assert verify_solution(lp, {"x": 3})

    def test_negative_value(self):
        assert not verify_solution(LinearProgram.build(["x"], {}), {"x": -1})

    def test_empty_constraints(self):
        lp = LinearProgram.build(["x", "y"], {"x": 1})
        assert verify_solution(lp, {"x": 5, "y": Fraction(1, 3)})

    def test_unknown_variable(self):
        with pytest.raises(KeyError):
            verify_solution(lp_x_ge_3(), {"x": 3, "z": 0})

    def test_missing_variable(self):
        with pytest.raises(KeyError):
            verify_solution(lp_simplex_core(), {"x1": 0})


class TestBruteForce:
    @pytest.mark.parametrize("make", [lp_x_ge_3, lp_x_le_minus_1, lp_simplex_core])
    def test_matches_solver_on_examples(self, make):
        a, b = solve_lp(make()), brute_force_lp_vertices(make())
        assert a.status is b.status and a.value == b.value

    def test_unbounded(self):
        lp = LinearProgram.build(["x", "y"], {"x": -1}, [Constraint.build({"x": 1, "y": -1}, "<=", 2)])
        assert brute_force_lp_vertices(lp).status is Status.UNBOUNDED

    def test_cap(self):
        xs = [f"x{i}" for i in range(15)]
        with pytest.raises(LimitExceeded):
            brute_force_lp_vertices(LinearProgram.build(xs, {}))

    def test_slp_of_p3(self):
        from cliqueflow.graph_core import Graph

        lp = build_slp(Graph.path(3), 2, 1)
        # 8 variables + 7 rows exceeds the default cap of 14 by one.
        oracle = brute_force_lp_vertices(lp, cap=15)
        assert oracle.value == solve_lp(lp).value == 2


def test_random_lps_agree_with_vertex_enumeration():
    rng = random.Random(20240601)
    statuses = {s: 0 for s in Status}
    for _ in range(500):
        lp = random_lp(rng)
        a = solve_lp(lp)
        b = brute_force_lp_vertices(lp)
        assert a.status is b.status, lp
        assert a.value == b.value, lp
        statuses[a.status] += 1
        if a.optimal:
            assert verify_solution(lp, a.assignment)
            assert lp.objective_value(a.assignment) == a.value
            assert is_vertex(lp, a.assignment)
    # The generator should exercise every outcome.
    assert all(statuses.values()), statuses


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_scaling_covariance(seed, factor):
    lp = random_lp(random.Random(seed))
    a = solve_lp(lp)
    b = solve_lp(lp.scaled_objective(factor))
    assert a.status is b.status
    if a.optimal:
        assert b.value == factor * a.value
        # Each argmin is optimal for the other objective too.
        assert lp.objective_value(b.assignment) == a.value
        assert lp.scaled_objective(factor).objective_value(a.assignment) == b.value
