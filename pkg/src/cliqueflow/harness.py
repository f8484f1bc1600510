"""Audit engine: run the LP clique decision against exact oracles and tally the outcome.

A probe is one ``(graph, k)`` pair with ``2 <= k <= n`` and a nonnegative
budget ``r = |E| - C(k, 2)``. The LP decision is the "lp" answer, the
brute-force clique search is the oracle. False positives are kept in full as
replayable certificates; a false negative means a bug and fails the audit.
"""

from __future__ import annotations

import enum
import json
import logging
import random
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable

from cliqueflow.decision import clique_decide
from cliqueflow.errors import LimitExceeded
from cliqueflow.graph_core import (
    Graph,
    enumerate_graphs,
    gen_erdos_renyi,
    has_clique,
    max_clique_bruteforce,
    parse_dimacs,
    write_dimacs,
)
from cliqueflow.reduction import budget_for
from cliqueflow.slp_model import solve_ip_exact

log = logging.getLogger(__name__)

EXHAUSTIVE_CAP = 6
RANDOM_CAP = 18


class Classification(str, enum.Enum):
    TRUE_POSITIVE = "TruePositive"
    TRUE_NEGATIVE = "TrueNegative"
    FALSE_POSITIVE = "FalsePositive"
    FALSE_NEGATIVE = "FalseNegative"


_TOTAL_KEYS = {
    Classification.TRUE_POSITIVE: "tp",
    Classification.TRUE_NEGATIVE: "tn",
    Classification.FALSE_POSITIVE: "fp",
    Classification.FALSE_NEGATIVE: "fn",
}


def classify(lp: bool, oracle: bool) -> Classification:
    if lp:
        return Classification.TRUE_POSITIVE if oracle else Classification.FALSE_POSITIVE
    return Classification.FALSE_NEGATIVE if oracle else Classification.TRUE_NEGATIVE


class AuditFailure(RuntimeError):
    """An audit produced false negatives, which the forward direction rules out."""


@dataclass(frozen=True)
class AuditRecord:
    dimacs: str
    k: int
    r: int
    slp_value: str
    lp_answer: bool
    oracle_answer: bool
    classification: Classification
    ip_value: int | None = None

    def to_dict(self) -> dict:
        d = {
            "dimacs": self.dimacs,
            "k": self.k,
            "r": self.r,
            "slp_value": self.slp_value,
            "lp": "yes" if self.lp_answer else "no",
            "oracle": "yes" if self.oracle_answer else "no",
        }
        if self.ip_value is not None:
            d["ip_value"] = self.ip_value
        return d


@dataclass
class AuditReport:
    config: dict
    seed: int
    totals: dict[str, int] = field(default_factory=lambda: {"tp": 0, "tn": 0, "fp": 0, "fn": 0})
    false_positives: list[AuditRecord] = field(default_factory=list)
    false_negatives: list[AuditRecord] = field(default_factory=list)
    graphs: int = 0
    elapsed_ms: int = 0

    @property
    def instances(self) -> int:
        return sum(self.totals.values())

    @property
    def ok(self) -> bool:
        return self.totals["fn"] == 0

    def add(self, record: AuditRecord) -> None:
        self.totals[_TOTAL_KEYS[record.classification]] += 1
        if record.classification is Classification.FALSE_POSITIVE:
            self.false_positives.append(record)
        elif record.classification is Classification.FALSE_NEGATIVE:
            self.false_negatives.append(record)

    def check(self) -> None:
        if not self.ok:
            raise AuditFailure(f"{self.totals['fn']} false negatives; first: {self.false_negatives[0]}")

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "config": self.config,
            "totals": dict(self.totals),
            "instances": self.instances,
            "graphs": self.graphs,
            "false_positives": [r.to_dict() for r in self.false_positives],
        }
        if self.false_negatives:
            d["false_negatives"] = [r.to_dict() for r in self.false_negatives]
        d["seed"] = self.seed
        # Wall time breaks byte-identical reruns, so it is opt-in.
        d["elapsed_ms"] = self.elapsed_ms if include_timing else 0
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"


def probe_graph(g: Graph, with_ip: bool = False) -> list[AuditRecord]:
    """Run every admissible ``k`` on ``g`` through both the LP decision and the oracle."""
    omega, _ = max_clique_bruteforce(g)
    text = write_dimacs(g)
    records = []
    for k in range(2, g.n + 1):
        r = budget_for(g, k)
        if r < 0:
            continue
        verdict = clique_decide(g, k)
        oracle = k <= omega
        ip_value = solve_ip_exact(g, r).value if with_ip else None
        v = verdict.slp_value
        records.append(
            AuditRecord(
                text,
                k,
                r,
                f"{v.numerator}/{v.denominator}",
                verdict.answer,
                oracle,
                classify(verdict.answer, oracle),
                ip_value,
            )
        )
    return records


def _probe_args(args: tuple[Graph, bool]) -> list[AuditRecord]:
    return probe_graph(*args)


def _run(report: AuditReport, graphs: Iterable[Graph], with_ip: bool, jobs: int) -> AuditReport:
    start = time.perf_counter()
    work = ((g, with_ip) for g in graphs)
    if jobs > 1:
        with Pool(jobs) as pool:
            # imap preserves input order, so the merged report is independent of scheduling.
            for records in pool.imap(_probe_args, work, chunksize=64):
                report.graphs += 1
                for rec in records:
                    report.add(rec)
    else:
        for args in work:
            report.graphs += 1
            for rec in _probe_args(args):
                report.add(rec)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    log.info("audit %s: %s in %d ms", report.config, report.totals, report.elapsed_ms)
    return report


def exhaustive_instance_estimate(n_max: int) -> int:
    return sum(2 ** (n * (n - 1) // 2) * max(n - 1, 0) for n in range(1, n_max + 1))


def audit_exhaustive(
    n_max: int, with_ip: bool = True, jobs: int = 1, cap: int = EXHAUSTIVE_CAP
) -> AuditReport:
    """Audit every labeled graph on ``1..n_max`` vertices."""
    if n_max > cap:
        raise LimitExceeded(
            f"exhaustive audit refused for n_max={n_max} > {cap}: about "
            f"{exhaustive_instance_estimate(n_max)} probes"
        )
    config = {"mode": "exhaustive", "n_max": n_max, "with_ip": with_ip}
    graphs = (g for n in range(1, n_max + 1) for g in enumerate_graphs(n, cap=cap))
    return _run(AuditReport(config, seed=0), graphs, with_ip, jobs)


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(trials)]


def audit_random(
    n: int,
    p: float,
    trials: int,
    seed: int,
    with_ip: bool = False,
    jobs: int = 1,
    cap: int = RANDOM_CAP,
) -> AuditReport:
    """Audit ``trials`` Erdos-Renyi graphs ``G(n, p)`` drawn from per-trial seeds."""
    if n > cap:
        raise LimitExceeded(f"random audit refused for n={n} > oracle cap {cap}")
    config = {"mode": "random", "n": n, "p": p, "trials": trials, "with_ip": with_ip}
    graphs = (gen_erdos_renyi(n, p, s) for s in trial_seeds(seed, trials))
    return _run(AuditReport(config, seed=seed), graphs, with_ip, jobs)


def replay_certificate(record: dict | AuditRecord) -> Classification:
    """Recompute a stored record's classification from its DIMACS text alone."""
    if isinstance(record, AuditRecord):
        record = record.to_dict()
    g = parse_dimacs(record["dimacs"])
    k = record["k"]
    verdict = clique_decide(g, k)
    oracle = has_clique(g, k) is not None
    return classify(verdict.answer, oracle)

