"""Linear programs over exact rationals and their solutions.

Every variable is implicitly bounded below by zero and unbounded above, and
the sense is always minimisation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Number = Union[int, str, Fraction]


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


def as_rational(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Constraint:
    """``sum(coef * var) relation rhs``; ``terms`` holds nonzero coefficients only."""

    terms: tuple[tuple[str, Fraction], ...]
    relation: Relation
    rhs: Fraction
    name: str = ""

    @classmethod
    def build(
        cls, coeffs: Mapping[str, Number], relation: Relation | str, rhs: Number, name: str = ""
    ) -> Constraint:
        terms = tuple((v, as_rational(c)) for v, c in coeffs.items() if as_rational(c) != 0)
        return cls(terms, Relation(relation), as_rational(rhs), name)

    def lhs(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return sum((c * assignment[v] for v, c in self.terms), Fraction(0))

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        lhs = self.lhs(assignment)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Minimise ``offset + sum(objective[v] * v)`` subject to ``constraints``, all vars >= 0."""

    variables: tuple[str, ...]
    objective: tuple[tuple[str, Fraction], ...]
    constraints: tuple[Constraint, ...] = ()
    offset: Fraction = Fraction(0)
    name: str = "obj"
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        index = {v: i for i, v in enumerate(self.variables)}
        if len(index) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v, _ in self.objective:
            if v not in index:
                raise ValueError(f"objective references undeclared variable {v!r}")
        for con in self.constraints:
            for v, _ in con.terms:
                if v not in index:
                    raise ValueError(f"constraint {con.name!r} references undeclared variable {v!r}")
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(
        cls,
        variables: Iterable[str],
        objective: Mapping[str, Number],
        constraints: Iterable[Constraint] = (),
        offset: Number = 0,
        name: str = "obj",
    ) -> LinearProgram:
        obj = tuple((v, as_rational(c)) for v, c in objective.items() if as_rational(c) != 0)
        rows = tuple(
            con if con.name else Constraint(con.terms, con.relation, con.rhs, f"c{i}")
            for i, con in enumerate(constraints)
        )
        return cls(tuple(variables), obj, rows, as_rational(offset), name)

    def index(self, var: str) -> int:
        return self._index[var]

    def objective_value(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return self.offset + sum((c * assignment[v] for v, c in self.objective), Fraction(0))

    def scaled_objective(self, factor: Number) -> LinearProgram:
        f = as_rational(factor)
        return LinearProgram(
            self.variables,
            tuple((v, c * f) for v, c in self.objective),
            self.constraints,
            self.offset * f,
            self.name,
        )


@dataclass(frozen=True)
class LpSolution:
    status: Status
    value: Fraction | None = None
    assignment: Mapping[str, Fraction] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def verify_solution(lp: LinearProgram, assignment: Mapping[str, Number]) -> bool:
    """Exact feasibility check: nonnegativity plus every constraint, no tolerance."""
    for v in assignment:
        if v not in lp._index:
            raise KeyError(f"unknown variable {v!r}")
    missing = [v for v in lp.variables if v not in assignment]
    if missing:
        raise KeyError(f"assignment does not cover variables {missing}")
    point = {v: as_rational(x) for v, x in assignment.items()}
    if any(x < 0 for x in point.values()):
        return False
    return all(con.holds(point) for con in lp.constraints)
