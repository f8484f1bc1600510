import random
from fractions import Fraction

import pytest

from cliqueflow.lp import (
    Constraint,
    LinearProgram,
    LpFormatError,
    format_lp,
    parse_lp,
    solve_lp,
)

from test_lp_core import beale, lp_simplex_core, random_lp


def test_round_trip_random_programs():
    rng = random.Random(7)
    for _ in range(200):
        lp = random_lp(rng)
        assert parse_lp(format_lp(lp)).lp == lp


@pytest.mark.parametrize("make", [beale, lp_simplex_core])
def test_round_trip_is_text_stable(make):
    text = format_lp(make())
    assert format_lp(parse_lp(text).lp) == text


def test_emitted_text():
    lp = LinearProgram.build(
        ["x", "y"],
        {"x": Fraction(3, 2), "y": -1},
        [Constraint.build({"x": 1, "y": -2}, ">=", -3, "row")],
    )
    assert format_lp(lp) == (
        "Minimize\n obj: 3/2 x - y\nSubject To\n row: x - 2 y >= -3\n"
        "Bounds\n x >= 0\n y >= 0\nEnd\n"
    )


def test_unused_variables_survive():
    lp = LinearProgram.build(["a", "b", "c"], {"b": 1})
    assert parse_lp(format_lp(lp)).lp.variables == ("a", "b", "c")


def test_binaries_and_fixed():
    lp = LinearProgram.build(["x", "y"], {"x": 1, "y": 1}, [Constraint.build({"x": 1, "y": 1}, ">=", 1, "r")])
    parsed = parse_lp(format_lp(lp, binaries=["x", "y"], fixed_zero=["y"]))
    assert parsed.binaries == ("x", "y")
    assert parsed.fixed_zero == ("y",)
    sol = solve_lp(parsed.lp)
    assert sol.value == 1 and sol.assignment["y"] == 0


def test_handwritten_input():
    text = """\\ comment
MINIMIZE
  cost: 2 x + 3 y - 1
SUBJECT TO
  a: x + y >= 2
  b: x - y = 0
END
"""
    parsed = parse_lp(text)
    assert parsed.lp.variables == ("x", "y")
    assert parsed.lp.offset == -1
    assert solve_lp(parsed.lp).value == 4


@pytest.mark.parametrize(
    "text",
    [
        "Minimize\n obj: x\nSubject To\n c: x >= 1\n",  # no End
        "Minimize\n obj: x\nSubject To\n c: x 1\nEnd\n",  # no relation
        "Minimize\n obj: x\nSubject To\n c: x + >= 1\nEnd\n",
        "Minimize\n obj: x y\nEnd\n",
        "Minimize\n obj: x\nSubject To\n c: x >= y\nEnd\n",
        "Minimize\n obj: x\nBounds\n x <= 3\nEnd\n",
        "x + y\n",
        "Minimize\n obj: x ? 2\nEnd\n",
    ],
)
def test_malformed(text):
    with pytest.raises(LpFormatError):
        parse_lp(text)
