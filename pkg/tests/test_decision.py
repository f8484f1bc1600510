from fractions import Fraction

import pytest

import cliqueflow.decision as decision
from cliqueflow.decision import (
    DecisionVerdict,
    Rationale,
    clique_decide,
    largest_admissible_k,
    max_clique_lp,
    poly_mfnip_decide,
)
from cliqueflow.graph_core import Graph, enumerate_graphs, gen_erdos_renyi, has_clique, max_clique_bruteforce

from conftest import diamond, star


class TestPolyMfnip:
    def test_diamond(self):
        v = poly_mfnip_decide(diamond(), 3, 2)
        assert v.answer and v.slp_value == 3 and v.rationale is Rationale.SLP_EQUALS_K

    def test_k4(self):
        assert poly_mfnip_decide(Graph.complete(4), 4, 0).answer

    def test_star_zero_budget(self):
        v = poly_mfnip_decide(star(3), 3, 0)
        assert not v.answer and v.slp_value == 4 and v.rationale is Rationale.SLP_EXCEEDS_K

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            poly_mfnip_decide(diamond(), 3, -1)
        with pytest.raises(ValueError):
            poly_mfnip_decide(diamond(), -1, 0)


class TestCliqueDecide:
    def test_c4_edge(self):
        v = clique_decide(Graph.cycle(4), 2)
        assert v.answer and v.r == 3 and v.slp_value == 2

    def test_p3_triangle(self):
        v = clique_decide(Graph.path(3), 3)
        assert not v.answer and v.r == -1 and v.rationale is Rationale.BUDGET_NEGATIVE
        assert v.slp_value is None

    def test_c4_triangle_false_positive(self):
        v = clique_decide(Graph.cycle(4), 3)
        assert v.answer and v.slp_value == Fraction(3) and v.r == 1
        assert has_clique(Graph.cycle(4), 3) is None

    @pytest.mark.parametrize("k, answer", [(0, True), (1, True)])
    def test_small_k(self, k, answer):
        v = clique_decide(Graph(3), k)
        assert v.answer is answer and v.rationale is Rationale.TRIVIAL_SMALL_K

    def test_small_k_empty_graph(self):
        assert clique_decide(Graph(0), 0).answer
        v = clique_decide(Graph(0), 1)
        assert not v.answer and v.rationale is Rationale.EMPTY_GRAPH

    def test_negative_k(self):
        with pytest.raises(ValueError):
            clique_decide(Graph(3), -1)

    def test_budget_guard_builds_no_model(self, monkeypatch):
        def forbidden(*_):
            raise AssertionError("model constructed for a negative budget")

        monkeypatch.setattr(decision, "solve_slp", forbidden)
        for g in enumerate_graphs(4):
            for k in range(2, 6):
                if g.m < k * (k - 1) // 2:
                    assert clique_decide(g, k).rationale is Rationale.BUDGET_NEGATIVE

    @pytest.mark.parametrize("n", range(2, 7))
    def test_no_false_negatives(self, n):
        for g in enumerate_graphs(n):
            omega = max_clique_bruteforce(g)[0]
            for k in range(2, omega + 1):
                v = clique_decide(g, k)
                assert v.answer and v.slp_value == k


class TestVerdict:
    def test_invariants(self):
        with pytest.raises(ValueError):
            DecisionVerdict(True, Fraction(4), 3, 0, Rationale.SLP_EXCEEDS_K)
        with pytest.raises(ValueError):
            DecisionVerdict(True, Fraction(4), 3, 0, Rationale.SLP_EQUALS_K)

    def test_to_dict(self):
        assert clique_decide(Graph.cycle(4), 3).to_dict() == {
            "answer": "yes", "slp_value": "3/1", "k": 3, "r": 1, "rationale": "SlpEqualsK",
        }


class TestMaxClique:
    @pytest.mark.parametrize(
        "g, expected", [(Graph.complete(3), 3), (Graph.complete(2), 2), (Graph.cycle(4), 3), (Graph(3), 1)]
    )
    def test_examples(self, g, expected):
        assert max_clique_lp(g)[0] == expected

    def test_trace(self):
        k, trace = max_clique_lp(Graph.complete(3))
        assert k == 3 and [v.k for v in trace] == [3]
        k, trace = max_clique_lp(star(3))
        assert [v.k for v in trace] == [3, 2] and k == 2

    def test_admissible_start(self):
        assert largest_admissible_k(Graph.cycle(4)) == 3
        assert largest_admissible_k(Graph.complete(5)) == 5
        assert largest_admissible_k(Graph(4)) == 1
        assert largest_admissible_k(star(6)) == 4

    def test_needs_vertex(self):
        with pytest.raises(ValueError):
            max_clique_lp(Graph(0))

    def test_upper_bound_on_random_graphs(self):
        for seed in range(30):
            g = gen_erdos_renyi(9, 0.5, seed)
            assert max_clique_lp(g)[0] >= max_clique_bruteforce(g)[0]

    def test_deterministic(self):
        g = gen_erdos_renyi(8, 0.6, 4)
        assert max_clique_lp(g) == max_clique_lp(g)
