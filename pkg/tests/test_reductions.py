import json
import random
from itertools import combinations

import networkx as nx
import pytest

from heredity_iso.graph import Graph, complete, cycle, path
from heredity_iso.induced import is_member
from heredity_iso.oracle import labeled_graphs
from heredity_iso.reductions import (
    REDUCTIONS,
    SPLIT_GRAPHS,
    SPLIT_INCIDENCE,
    Reduction,
    ReductionDomainError,
    describe,
    is_split,
    register,
    split_incidence_reduce,
    split_partition,
    verify_reduction,
)

from conftest import random_graph, relabeled, to_nx


def test_triangle_image():
    h = split_incidence_reduce(complete(3))
    assert h.n == 6 and h.m == 3 + 6
    assert split_partition(h) == ([0, 1, 2], [3, 4, 5])
    assert h.rows[3] == 0b011 and h.rows[4] == 0b101 and h.rows[5] == 0b110


def test_path_image():
    h = split_incidence_reduce(path(3))
    assert h.n == 5 and sorted(h.degrees) == [2, 2, 3, 3, 4]


def test_deterministic():
    g = Graph(7, list(cycle(7).edges()) + [(0, 3), (2, 5)])
    assert split_incidence_reduce(g) == split_incidence_reduce(g)


@pytest.mark.parametrize("g", [Graph(1), Graph(3, [(0, 1)]), Graph(0)])
def test_domain_errors(g):
    with pytest.raises(ReductionDomainError):
        split_incidence_reduce(g)
    with pytest.raises(ReductionDomainError):
        SPLIT_INCIDENCE(g)


def test_harness_reports_bad_corpus_position():
    with pytest.raises(ReductionDomainError) as info:
        verify_reduction(SPLIT_INCIDENCE, [(path(2), path(2)), (path(3), Graph(3, [(0, 1)]))])
    assert (info.value.pair_index, info.value.position) == (1, 1)


def test_empty_corpus():
    report = verify_reduction(SPLIT_INCIDENCE, [])
    assert report.records == [] and report.violations == []
    assert "0 pairs, 0 violations" in report.to_text()


def _no_isolated(g):
    return g.n >= 2 and min(g.degrees) >= 1


def test_zero_violations_up_to_four_vertices():
    corpus_graphs = [g for n in range(2, 5) for g in labeled_graphs(n) if _no_isolated(g)]
    pairs = [(a, b) for a in corpus_graphs for b in corpus_graphs]
    report = verify_reduction(SPLIT_INCIDENCE, pairs)
    assert len(report.records) == len(pairs) and not report.violations and not report.skipped
    assert any(r.iso_before for r in report.records)
    assert all(r.certificates for r in report.records)


def test_images_against_networkx():
    rng = random.Random(12)
    for _ in range(40):
        a = random_graph(6, 0.5, rng)
        if not _no_isolated(a):
            continue
        b = relabeled(a, rng) if rng.random() < 0.5 else random_graph(6, a.m / 15, rng)
        if not _no_isolated(b):
            continue
        ra, rb = split_incidence_reduce(a), split_incidence_reduce(b)
        assert nx.is_isomorphic(to_nx(a), to_nx(b)) == nx.is_isomorphic(to_nx(ra), to_nx(rb))


@pytest.mark.parametrize("n", range(1, 6))
def test_split_recognition_matches_forbidden_characterization(n):
    for g in labeled_graphs(n):
        assert is_split(g) == is_member(g, SPLIT_GRAPHS)


def test_split_against_brute_force_partition():
    rng = random.Random(5)
    for _ in range(200):
        g = random_graph(rng.randint(1, 9), rng.random(), rng)
        brute = any(
            all(g.has_edge(u, v) for u, v in combinations(c, 2))
            and not any(g.has_edge(u, v) for u, v in combinations([x for x in range(g.n) if x not in c], 2))
            for k in range(g.n + 1)
            for c in combinations(range(g.n), k)
        )
        assert is_split(g) == brute


def test_non_split_examples():
    assert not is_split(cycle(4)) and not is_split(cycle(5))
    assert not is_split(Graph(4, [(0, 1), (2, 3)]))
    assert is_split(Graph(0))


def test_report_formats():
    g, h = path(3), complete(3)
    report = verify_reduction(SPLIT_INCIDENCE, [(g, h), (g, relabeled(g, random.Random(0)))])
    data = json.loads(json.dumps(report.to_dict()))
    assert data["pairs"] == 2 and data["violations"] == 0
    assert [r["iso_before"] for r in data["records"]] == [False, True]
    text = report.to_text(all_lines=True)
    assert text.startswith("reduction split_incidence") and text.count("\n") == 3


def test_harness_catches_broken_reduction():
    # Dropping all edges maps non-isomorphic graphs of equal size together.
    broken = Reduction("erase", SPLIT_GRAPHS, lambda g: Graph(g.n))
    report = verify_reduction(broken, [(path(3), complete(3))])
    assert len(report.violations) == 1 and "VIOLATION" in report.to_text()


def test_oracle_limit_skips():
    report = verify_reduction(SPLIT_INCIDENCE, [(complete(6), complete(6))], oracle_limit=10)
    assert len(report.skipped) == 1 and not report.violations


def test_registry():
    assert REDUCTIONS["split_incidence"] is SPLIT_INCIDENCE
    with pytest.raises(ValueError):
        register(SPLIT_INCIDENCE)
    assert describe(SPLIT_INCIDENCE) == "split_incidence: -> P2+P2, C4, C5-free"
