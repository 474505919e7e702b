"""Exhaustive small-graph self checks behind ``heredity-iso selftest``.

Reports contain no timings or other run-dependent data, so repeated runs
with the same seed are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import expr as E
from .classify import ForbiddenPair, GI_COMPLETE, classify
from .cograph import NotCograph, build_cotree, canonical_code, check_cotree, cotree_graph
from .formats import decode_graph6, encode_graph6
from .graph import Graph, complete, is_induced_copy, min_degree, path
from .oracle import brute_force_iso, canonical_form_small, labeled_graphs, nonisomorphic_graphs
from .reductions import SPLIT_INCIDENCE, verify_reduction

GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}
COGRAPH_COUNT_5 = 24


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _counts(max_n: int) -> Check:
    got = {n: len(nonisomorphic_graphs(n)) for n in range(1, max_n + 1)}
    want = {n: GRAPH_COUNTS[n] for n in got}
    return Check(f"graph counts n<={max_n}", got == want, ",".join(str(got[n]) for n in sorted(got)))


def _pairwise_classes(n: int) -> int:
    reps: list[Graph] = []
    for g in labeled_graphs(n):
        if not any(brute_force_iso(g, r).isomorphic for r in reps):
            reps.append(g)
    return len(reps)


def _cross_check(max_n: int) -> Check:
    got = [_pairwise_classes(n) for n in range(1, max_n + 1)]
    want = [GRAPH_COUNTS[n] for n in range(1, max_n + 1)]
    return Check(f"pairwise oracle classes n<={max_n}", got == want, ",".join(map(str, got)))


def _graph6(max_n: int) -> Check:
    bad = sum(decode_graph6(encode_graph6(g)) != g for n in range(max_n + 1) for g in labeled_graphs(n))
    k3 = encode_graph6(complete(3))
    return Check(f"graph6 round trip n<={max_n}", bad == 0 and k3 == b"Bw", f"{bad} mismatches, K3 -> {k3.decode()}")


def _cographs(max_n: int) -> Check:
    problems = 0
    classes_5 = set()
    for n in range(1, max_n + 1):
        for g in nonisomorphic_graphs(n):
            t = build_cotree(g)
            if isinstance(t, NotCograph):
                problems += not is_induced_copy(g, path(4), t.witness)
                continue
            check_cotree(t, g.n)
            problems += cotree_graph(t) != g
            if n == 5:
                classes_5.add(canonical_code(t))
    ok = problems == 0 and (max_n < 5 or len(classes_5) == COGRAPH_COUNT_5)
    return Check(f"cotrees n<={max_n}", ok, f"{problems} problems, {len(classes_5)} cograph classes at n=5")


def _classification() -> Check:
    exc = E.exception_set()
    cat = E.enumerate_path_union_complements(7, 3)
    rao = classify(ForbiddenPair.parse("P4+K1", "co(P4+K1)"))
    bad = []
    for e in exc:
        for x in ("co(P6)", "co(P7)"):
            if classify(ForbiddenPair(e, E.parse_expr(x))).kind != GI_COMPLETE:
                bad.append(f"{E.to_text(e)}/{x}")
    ok = len(exc) == 3 and [E.vertex_count(e) for e in exc] == [5, 4, 5] and len(cat) == 30
    ok = ok and not bad and str(rao) == "Polynomial(rao)"
    return Check("classification facts", ok, f"exception set 3, catalog {len(cat)}, (P4+K1, co(P4+K1)) {rao}, bad={bad}")


def _reduction_corpus(max_n: int) -> list[Graph]:
    return [g for n in range(2, max_n + 1) for g in labeled_graphs(n) if min_degree(g) >= 1]


def _reductions(max_n: int, sample: int, seed: int) -> Check:
    graphs = _reduction_corpus(max_n)
    pairs = list(combinations(graphs, 2)) + [(g, g) for g in graphs]
    rng = random.Random(seed)
    five = [g for g in labeled_graphs(5) if min_degree(g) >= 1]
    for _ in range(sample):
        a = rng.choice(five)
        if rng.random() < 0.5:
            perm = list(range(5))
            rng.shuffle(perm)
            b = a.relabel(perm)
        else:
            b = rng.choice(five)
        pairs.append((a, b))
    report = verify_reduction(SPLIT_INCIDENCE, pairs)
    ok = not report.violations and not report.skipped
    return Check(
        f"split_incidence harness n<={max_n} + {sample} sampled at n=5",
        ok,
        f"{len(report.records)} pairs, {len(report.violations)} violations",
    )


def _canonical_vs_oracle(n: int) -> Check:
    graphs = list(labeled_graphs(n))
    rng = random.Random(n)
    disagreements = 0
    for _ in range(300):
        a, b = rng.choice(graphs), rng.choice(graphs)
        same = canonical_form_small(a) == canonical_form_small(b)
        disagreements += same != brute_force_iso(a, b).isomorphic
    return Check(f"canonical form vs oracle n={n} (300 sampled pairs)", disagreements == 0, f"{disagreements} disagreements")


def run(level: str = "quick", seed: int = 0) -> list[Check]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown selftest level {level!r}")
    checks = [_counts(5), _cross_check(4), _graph6(4), _cographs(5), _classification()]
    if level == "full":
        checks += [
            _counts(7),
            _cross_check(5),
            _graph6(6),
            _cographs(7),
            _canonical_vs_oracle(6),
            _reductions(4, 500, seed),
        ]
    return checks


def report(checks: list[Check]) -> str:
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
