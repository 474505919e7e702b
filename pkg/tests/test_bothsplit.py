import random

import networkx as nx
import pytest

from heredity_iso.bothsplit import OutsideStructureError, decompose, decomposition_iso
from heredity_iso.classify import DispatchError, ForbiddenPair, MembershipError, bothsplit_iso
from heredity_iso.graph import Graph, complement, complete, cycle, disjoint_union, is_isomorphism, join, path
from heredity_iso.induced import is_member
from heredity_iso.oracle import brute_force_iso, canonical_form_small, nonisomorphic_graphs

from conftest import random_graph, relabeled, to_nx

PAW_CLAW = ForbiddenPair.parse("co(P3+P1)", "co(K3+K1)")
PAW_COPAW = ForbiddenPair.parse("co(P3+P1)", "P3+P1")
PAIRS = [PAW_CLAW, PAW_COPAW, PAW_CLAW.complemented(), PAW_COPAW.complemented()]


def members(pair, n):
    return [g for g in nonisomorphic_graphs(n) if is_member(g, pair.spec)]


@pytest.mark.parametrize("pair", PAIRS, ids=str)
@pytest.mark.parametrize("n", range(1, 7))
def test_agrees_with_oracle_on_all_small_members(pair, n):
    rng = random.Random(n)
    ms = members(pair, n)
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            b2 = relabeled(b, rng)
            r = bothsplit_iso(a, b2, pair)
            assert r.isomorphic == (i == j) == brute_force_iso(a, b2).isomorphic
            if r.isomorphic:
                assert is_isomorphism(a, b2, r.mapping)


def _path_cycle_union(rng, parts):
    pieces = [path(rng.randint(1, 9)) if rng.random() < 0.5 else cycle(rng.randint(4, 9)) for _ in range(parts)]
    return disjoint_union(*pieces)


@pytest.mark.parametrize("seed", range(8))
def test_large_paw_claw_members(seed):
    rng = random.Random(seed)
    g = _path_cycle_union(rng, rng.randint(3, 8))
    if seed % 2:
        # Complete multipartite with parts of size two: paw-free and claw-free.
        octahedron = join(Graph(2), join(Graph(2), Graph(2)))
        g = disjoint_union(g, octahedron, complete(4))
    if seed % 4 == 3:
        g = complement(g)
    pair = PAW_CLAW.complemented() if seed % 4 == 3 else PAW_CLAW
    assert is_member(g, pair.spec)
    h = relabeled(g, rng)
    r = bothsplit_iso(g, h, pair)
    assert r.isomorphic and is_isomorphism(g, h, r.mapping)
    # A second, independently drawn union of the same size, when one exists.
    other = _path_cycle_union(random.Random(seed + 100), 4)
    if other.n == g.n and is_member(other, pair.spec):
        assert bothsplit_iso(g, other, pair).isomorphic == nx.is_isomorphic(to_nx(g), to_nx(other))


@pytest.mark.parametrize("seed", range(6))
def test_large_paw_copaw_members(seed):
    rng = random.Random(seed)
    smalls = members(PAW_COPAW, 5)
    g = smalls[rng.randrange(len(smalls))]
    for _ in range(rng.randint(3, 6)):
        piece = smalls[rng.randrange(len(smalls))]
        g = join(g, piece) if rng.random() < 0.5 else disjoint_union(g, piece)
        if not is_member(g, PAW_COPAW.spec):
            g = piece
    h = relabeled(g, rng)
    r = bothsplit_iso(g, h, PAW_COPAW)
    assert r.isomorphic and is_isomorphism(g, h, r.mapping)


def test_c5_prime_piece():
    t = decompose(cycle(5))
    assert t.kind == "prime" and t.code == b"Q[C5]"
    assert decompose(complement(path(5))).code == b"Q[coP5]"


def test_distinguishes_paths_from_cycles():
    a = disjoint_union(path(6), cycle(6))
    b = disjoint_union(cycle(6), cycle(6))
    r = bothsplit_iso(a, b, PAW_CLAW)
    assert not r.isomorphic and r.witness == "decomposition_code"
    assert bothsplit_iso(path(5), path(4), PAW_CLAW).witness == "vertex_count"


def test_outside_structure():
    # Prime, 3-regular and not small: none of the supported shapes.
    rows = [0] * 10
    for u, v in nx.petersen_graph().edges():
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    with pytest.raises(OutsideStructureError):
        decomposition_iso(Graph.from_rows(rows), Graph.from_rows(rows))


def test_dispatch_errors():
    with pytest.raises(DispatchError):
        bothsplit_iso(path(3), path(3), ForbiddenPair.parse("P4", "P4"))
    with pytest.raises(DispatchError):
        bothsplit_iso(path(3), path(3), ForbiddenPair.parse("P4+K1", "co(P4+K1)"))
    claw = complement(disjoint_union(complete(3), Graph(1)))
    with pytest.raises(MembershipError) as info:
        bothsplit_iso(claw, claw, PAW_CLAW)
    assert info.value.which == "first graph"


def test_random_members_against_networkx():
    rng = random.Random(77)
    seen = 0
    while seen < 150:
        g = random_graph(rng.randint(4, 10), rng.random(), rng)
        h = random_graph(g.n, g.m / max(1, g.n * (g.n - 1) // 2), rng) if rng.random() < 0.5 else relabeled(g, rng)
        for pair in PAIRS:
            if is_member(g, pair.spec) and is_member(h, pair.spec):
                seen += 1
                assert bothsplit_iso(g, h, pair).isomorphic == nx.is_isomorphic(to_nx(g), to_nx(h))


def _members_on_eight(pair):
    # Hereditary: deleting a vertex of an 8-vertex member leaves a 7-vertex member.
    found = {}
    for g in members(pair, 7):
        for nbrs in range(1 << 7):
            rows = [r | ((nbrs >> v & 1) << 7) for v, r in enumerate(g.rows)] + [nbrs]
            h = Graph.from_rows(rows)
            if is_member(h, pair.spec):
                found.setdefault(canonical_form_small(h), h)
    return list(found.values())


@pytest.mark.parametrize("pair", [PAW_CLAW, PAW_COPAW], ids=str)
def test_agrees_with_oracle_on_eight_vertex_members(pair):
    rng = random.Random(8)
    ms = _members_on_eight(pair)
    assert ms
    for i, a in enumerate(ms):
        for j, b in enumerate(ms):
            b2 = relabeled(b, rng)
            r = bothsplit_iso(a, b2, pair)
            assert r.isomorphic == (i == j) == brute_force_iso(a, b2).isomorphic
