"""Plain-text LP format shared by the LP core, the Wood ILP and the SLP builders.

Grammar (one item per line, leading whitespace ignored)::

    Minimize
     <name>: <expr>
    Subject To
     <name>: <expr> <= | >= | = <rational>
    Bounds
     <var> >= 0        declares a (default) nonnegative variable
     <var> = 0         fixes a variable to zero
    Binary
     <var> <var> ...
    End

``<expr>`` is a sequence of terms ``[+|-] [coef] var`` or a bare ``[+|-] coef``
constant (objective only), tokens separated by whitespace. Coefficients are
integers or ``p/q`` rationals. ``Bounds`` lists every variable in declaration
order, so a program round-trips exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from cliqueflow.lp.model import Constraint, LinearProgram, Relation

_TOKEN = re.compile(r"\s*(<=|>=|=|[+-]|\d+(?:/\d+)?|[A-Za-z_][\w.\[\]]*)")


class LpFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ParsedLp:
    """A parsed model: the continuous program plus integrality and fixing metadata.

    Variables fixed by ``x = 0`` bound lines appear in ``lp`` as extra
    ``fix_<var>`` rows so the continuous program stays self-contained.
    """

    lp: LinearProgram
    binaries: tuple[str, ...] = ()
    fixed_zero: tuple[str, ...] = ()


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_expr(terms, constant: Fraction = Fraction(0)) -> str:
    parts: list[str] = []
    items = [(v, c) for v, c in terms if c != 0]
    if constant != 0 or not items:
        parts.append(_fmt_coef(constant))
    for v, c in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v if mag == 1 else f"{_fmt_coef(mag)} {v}"
        if not parts:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_lp(
    lp: LinearProgram,
    binaries: tuple[str, ...] | list[str] = (),
    fixed_zero: tuple[str, ...] | list[str] = (),
    comment: str | None = None,
) -> str:
    """Render ``lp`` in the shared text format; the inverse of :func:`parse_lp`."""
    fixed = set(fixed_zero)
    lines: list[str] = []
    if comment:
        lines.extend(f"\\ {line}" for line in comment.splitlines())
    lines.append("Minimize")
    lines.append(f" {lp.name}: {_fmt_expr(lp.objective, lp.offset)}")
    lines.append("Subject To")
    for i, con in enumerate(lp.constraints):
        name = con.name or f"c{i}"
        lines.append(f" {name}: {_fmt_expr(con.terms)} {con.relation.value} {_fmt_rhs(con.rhs)}")
    lines.append("Bounds")
    for v in lp.variables:
        lines.append(f" {v} = 0" if v in fixed else f" {v} >= 0")
    if binaries:
        lines.append("Binary")
        lines.append(" " + " ".join(binaries))
    lines.append("End")
    return "\n".join(lines) + "\n"


def _fmt_rhs(c: Fraction) -> str:
    return f"-{_fmt_coef(-c)}" if c < 0 else _fmt_coef(c)


def _tokenize(text: str, lineno: int) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise LpFormatError(lineno, f"unexpected input at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _parse_expr(tokens: list[str], lineno: int) -> tuple[dict[str, Fraction], Fraction, list[str]]:
    """Consume an expression; return (coefficients, constant, first-appearance order)."""
    coeffs: dict[str, Fraction] = {}
    order: list[str] = []
    constant = Fraction(0)
    i = 0
    expect_term = True
    while i < len(tokens):
        sign = 1
        if tokens[i] in ("+", "-"):
            sign = -1 if tokens[i] == "-" else 1
            i += 1
        elif not expect_term:
            raise LpFormatError(lineno, f"expected '+' or '-' before {tokens[i]!r}")
        if i >= len(tokens):
            raise LpFormatError(lineno, "dangling sign")
        coef = None
        if tokens[i][0].isdigit():
            coef = Fraction(tokens[i])
            i += 1
        if i < len(tokens) and (tokens[i][0].isalpha() or tokens[i][0] == "_"):
            var = tokens[i]
            i += 1
            if var not in coeffs:
                coeffs[var] = Fraction(0)
                order.append(var)
            coeffs[var] += sign * (coef if coef is not None else 1)
        elif coef is not None:
            constant += sign * coef
        else:
            raise LpFormatError(lineno, f"expected a term, got {tokens[i]!r}")
        expect_term = False
    return coeffs, constant, order


def _split_name(line: str, lineno: int) -> tuple[str, str]:
    name, sep, rest = line.partition(":")
    if not sep or not name.strip():
        raise LpFormatError(lineno, "expected '<name>: ...'")
    return name.strip(), rest


def parse_lp(text: str) -> ParsedLp:
    section = None
    obj_name = "obj"
    objective: dict[str, Fraction] = {}
    offset = Fraction(0)
    constraints: list[Constraint] = []
    declared: list[str] = []
    seen: list[str] = []
    fixed: list[str] = []
    binaries: list[str] = []
    ended = False
    headers = {"minimize": "min", "subject to": "st", "bounds": "bounds", "binary": "bin", "end": "end"}

    def note(order: list[str]) -> None:
        for v in order:
            if v not in seen:
                seen.append(v)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if ended:
            raise LpFormatError(lineno, "content after End")
        key = headers.get(line.lower())
        if key is not None:
            if key == "end":
                ended = True
            section = key
            continue
        if section == "min":
            obj_name, rest = _split_name(line, lineno)
            objective, offset, order = _parse_expr(_tokenize(rest, lineno), lineno)
            note(order)
        elif section == "st":
            name, rest = _split_name(line, lineno)
            tokens = _tokenize(rest, lineno)
            rel_at = [i for i, t in enumerate(tokens) if t in ("<=", ">=", "=")]
            if len(rel_at) != 1:
                raise LpFormatError(lineno, "constraint needs exactly one relation")
            r = rel_at[0]
            coeffs, constant, order = _parse_expr(tokens[:r], lineno)
            rhs_coeffs, rhs, _ = _parse_expr(tokens[r + 1 :], lineno)
            if constant or rhs_coeffs:
                raise LpFormatError(lineno, "constants belong on the right, variables on the left")
            note(order)
            constraints.append(Constraint.build(coeffs, tokens[r], rhs, name))
        elif section == "bounds":
            tokens = _tokenize(line, lineno)
            if len(tokens) != 3 or tokens[1] not in (">=", "=") or tokens[2] != "0":
                raise LpFormatError(lineno, "bounds must read '<var> >= 0' or '<var> = 0'")
            declared.append(tokens[0])
            if tokens[1] == "=":
                fixed.append(tokens[0])
        elif section == "bin":
            binaries.extend(line.split())
        else:
            raise LpFormatError(lineno, f"content outside any section: {line!r}")
    if not ended:
        raise LpFormatError(0, "missing End")

    variables = list(declared)
    for v in seen:
        if v not in variables:
            variables.append(v)
    for v in binaries:
        if v not in variables:
            raise LpFormatError(0, f"binary variable {v!r} is never used or declared")
    rows = constraints + [Constraint.build({v: 1}, Relation.LE, 0, f"fix_{v}") for v in fixed]
    lp = LinearProgram.build(variables, objective, rows, offset, obj_name)
    return ParsedLp(lp, tuple(binaries), tuple(fixed))
