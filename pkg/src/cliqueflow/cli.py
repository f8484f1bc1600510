"""Command-line front end.

Exit codes: 0 success (or "yes" for decide commands), 1 a "no" verdict,
2 usage or input error, 3 an audit that found false negatives.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from cliqueflow.decision import DecisionVerdict, clique_decide, max_clique_lp, poly_mfnip_decide
from cliqueflow.errors import LimitExceeded
from cliqueflow.graph_core import (
    DimacsError,
    Graph,
    gen_erdos_renyi,
    gen_planted_clique,
    parse_dimacs,
    write_dimacs,
)
from cliqueflow.harness import AuditReport, audit_exhaustive, audit_random
from cliqueflow.reduction import (
    InterdictionPlan,
    budget_for,
    build_wood_reduction,
    emit_wood_ilp,
    max_flow,
    solve_interdiction_exact,
)
from cliqueflow.slp_model import build_ip, build_slp, solve_ip_exact, solve_slp
from cliqueflow.lp import format_lp

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_AUDIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fraction(v) -> str:
    return f"{v.numerator}/{v.denominator}"


def _load(args) -> Graph:
    if not args.input:
        raise UsageError("--input is required")
    path = Path(args.input)
    text = sys.stdin.read() if args.input == "-" else path.read_text()
    return parse_dimacs(text)


def _emit(args, payload: dict | str) -> None:
    if isinstance(payload, dict):
        payload = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)


def _budget(args, g: Graph) -> int:
    if args.budget is not None:
        return args.budget
    if args.k is None:
        raise UsageError("pass --budget, or --k to derive the budget |E| - C(k,2)")
    return budget_for(g, args.k)


def _need_k(args) -> int:
    if args.k is None:
        raise UsageError("--k is required")
    return args.k


def _verdict_exit(args, verdict: DecisionVerdict) -> int:
    if args.json:
        _emit(args, verdict.to_dict())
    else:
        v = verdict.slp_value
        value = "-" if v is None else _fraction(v)
        _emit(
            args,
            f"{'yes' if verdict.answer else 'no'} (k={verdict.k} r={verdict.r} "
            f"slp={value} {verdict.rationale.value})\n",
        )
    return EXIT_OK if verdict.answer else EXIT_NO


def cmd_reduce(args) -> int:
    net = build_wood_reduction(_load(args))
    net.check_structure()
    summary = net.summary()
    _emit(args, summary if args.json else "\n".join(f"{k}: {v}" for k, v in summary.items()) + "\n")
    return EXIT_OK


def cmd_maxflow(args) -> int:
    g = _load(args)
    net = build_wood_reduction(g)
    if args.budget is not None:
        value, plan = solve_interdiction_exact(net, args.budget)
    else:
        plan = InterdictionPlan.of(net, args.interdict or ())
        value = max_flow(net, plan)
    if args.json:
        _emit(args, {"max_flow": value, "interdicted_arcs": sorted(plan.interdicted_arcs)})
    else:
        _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_solve_ip(args) -> int:
    g = _load(args)
    sol = solve_ip_exact(g, _budget(args, g))
    payload = {
        "value": sol.value,
        "interdicted": sorted(v + 1 for v in sol.interdicted),
        "cost": sol.cost,
    }
    _emit(args, payload if args.json else f"{sol.value}\n")
    return EXIT_OK


def cmd_solve_slp(args) -> int:
    g = _load(args)
    k = _need_k(args)
    r = _budget(args, g)
    value = solve_slp(g, k, r)
    _emit(args, {"k": k, "r": r, "slp_value": _fraction(value)} if args.json else f"{_fraction(value)}\n")
    return EXIT_OK


def cmd_decide_mfnip(args) -> int:
    g = _load(args)
    if args.budget is None:
        raise UsageError("--budget is required")
    return _verdict_exit(args, poly_mfnip_decide(g, _need_k(args), args.budget))


def cmd_decide_clique(args) -> int:
    return _verdict_exit(args, clique_decide(_load(args), _need_k(args)))


def cmd_max_clique(args) -> int:
    k, trace = max_clique_lp(_load(args))
    if args.json:
        _emit(args, {"k": k, "trace": [v.to_dict() for v in trace]})
    else:
        _emit(args, f"{k}\n")
    return EXIT_OK


def cmd_emit_ilp(args) -> int:
    g = _load(args)
    if args.model == "wood":
        if args.budget is None:
            raise UsageError("--budget is required for the arc-interdiction model")
        text = emit_wood_ilp(build_wood_reduction(g), args.budget).text
    else:
        k = _need_k(args)
        r = _budget(args, g)
        if args.model == "ip":
            text = build_ip(g, k, r).to_text()
        else:
            text = format_lp(build_slp(g, k, r), comment=f"SLP for n={g.n} m={g.m} k={k} r={r}")
    _emit(args, text)
    return EXIT_OK


def _audit_exit(args, report: AuditReport) -> int:
    if args.json or args.out:
        _emit(args, report.to_json(include_timing=args.timing))
    else:
        t = report.totals
        sys.stdout.write(
            f"graphs={report.graphs} probes={report.instances} "
            f"tp={t['tp']} tn={t['tn']} fp={t['fp']} fn={t['fn']}\n"
        )
    print(f"audit finished in {report.elapsed_ms} ms", file=sys.stderr)
    if not report.ok:
        print(f"error: {report.totals['fn']} false negatives", file=sys.stderr)
        return EXIT_AUDIT_FAILED
    return EXIT_OK


def cmd_audit_exhaustive(args) -> int:
    return _audit_exit(args, audit_exhaustive(args.n_max, with_ip=not args.no_ip, jobs=args.jobs))


def cmd_audit_random(args) -> int:
    if args.n is None or args.p is None:
        raise UsageError("--n and --p are required")
    report = audit_random(args.n, args.p, args.trials, args.seed, with_ip=args.with_ip, jobs=args.jobs)
    return _audit_exit(args, report)


def cmd_gen(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    p = 0.5 if args.p is None else args.p
    if args.k is not None:
        g, _ = gen_planted_clique(args.n, args.k, p, args.seed)
    else:
        g = gen_erdos_renyi(args.n, p, args.seed)
    _emit(args, write_dimacs(g) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="DIMACS edge file ('-' for stdin)")
    common.add_argument("--k", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=float)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cliqueflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("reduce", cmd_reduce, "build the interdiction network and summarise it")
    p = add("maxflow", cmd_maxflow, "max flow of the reduction network (optionally interdicted)")
    p.add_argument("--interdict", type=int, nargs="*", help="arc ids to delete")
    add("solve-ip", cmd_solve_ip, "exact node-interdiction IP optimum")
    add("solve-slp", cmd_solve_slp, "exact strengthened LP optimum")
    add("decide-mfnip", cmd_decide_mfnip, "interdiction decision via the LP")
    add("decide-clique", cmd_decide_clique, "clique decision via the LP")
    add("max-clique", cmd_max_clique, "LP-driven maximum clique loop")
    p = add("emit-ilp", cmd_emit_ilp, "write a model in LP text format")
    p.add_argument("--model", choices=("wood", "ip", "slp"), default="wood")
    for name, func in (("audit-exhaustive", cmd_audit_exhaustive), ("audit-random", cmd_audit_random)):
        p = add(name, func, f"{name.split('-')[1]} audit against the brute-force oracle")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--timing", action="store_true", help="embed wall time in the JSON report")
        if name == "audit-exhaustive":
            p.add_argument("--n-max", type=int, required=True)
            p.add_argument("--no-ip", action="store_true", help="skip the exact IP column")
        else:
            p.add_argument("--with-ip", action="store_true", help="also record the exact IP optimum")
    add("gen", cmd_gen, "write a random (or planted-clique with --k) DIMACS graph")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, DimacsError, LimitExceeded, ValueError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
