"""Ground-truth isomorphism for small graphs.

``brute_force_iso`` is an individualization/refinement backtracking search: it
colour-refines the disjoint union of both graphs so that colours are directly
comparable, and branches by individualizing one vertex on each side.  It is
exact; colour refinement is only ever used to reject.

``canonical_form_small`` is the lexicographically least graph6 string over
all relabelings, found by a breadth-first branch and bound that places
vertices one position at a time and keeps only the prefixes whose
adjacency columns are minimal so far.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .formats import decode_graph6, encode_graph6
from .graph import Graph, VertexMapping, degree_sequence, disjoint_union, is_isomorphism

# Documented, not enforced: the search is comfortable up to about this many vertices.
ORACLE_SOFT_BOUND = 20
CANONICAL_MAX_VERTICES = 8

Coloring = list[int]


class UnsupportedSizeError(ValueError):
    pass


@dataclass(frozen=True)
class IsoResult:
    """Verdict of an isomorphism test.

    ``mapping[v]`` is the image in the second graph of vertex ``v`` of the
    first; it is set exactly when the graphs are isomorphic.  Otherwise
    ``witness`` names the invariant that told them apart.
    """

    isomorphic: bool
    mapping: VertexMapping | None = None
    witness: str | None = None
    method: str = "oracle"

    @classmethod
    def found(cls, a: Graph, b: Graph, mapping: Sequence[int], method: str = "oracle") -> IsoResult:
        mapping = tuple(mapping)
        if not is_isomorphism(a, b, mapping):
            raise AssertionError(f"{method} produced a mapping that is not an isomorphism")
        return cls(True, mapping, None, method)

    @classmethod
    def differ(cls, witness: str, method: str = "oracle") -> IsoResult:
        return cls(False, None, witness, method)

    def to_dict(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "mapping": list(self.mapping) if self.mapping is not None else None,
            "witness": self.witness,
            "method": self.method,
        }


def _canonical_ids(values: Sequence) -> list[int]:
    ids = {v: i for i, v in enumerate(sorted(set(values)))}
    return [ids[v] for v in values]


def color_refinement(g: Graph, initial: Sequence[int] | None = None) -> Coloring:
    """Coarsest stable refinement of ``initial`` (uniform by default).

    Each round recolours every vertex by its colour together with the sorted
    multiset of its neighbours' colours.  New ids are the ranks of those
    signatures in sorted order, so ids are exact (no hashing).
    """
    if initial is None:
        colors = [0] * g.n
    else:
        if len(initial) != g.n:
            raise ValueError(f"initial colouring has {len(initial)} entries for {g.n} vertices")
        colors = _canonical_ids(initial)
    adj = g.adjacency
    classes = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(g.n)]
        new = _canonical_ids(sigs)
        new_classes = len(set(new))
        if new_classes == classes:
            return new
        colors, classes = new, new_classes


def color_classes(colors: Sequence[int]) -> list[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def brute_force_iso(a: Graph, b: Graph) -> IsoResult:
    """Exact isomorphism test with an explicit, verified mapping when one exists."""
    n = a.n
    if n != b.n:
        return IsoResult.differ("vertex_count")
    if degree_sequence(a) != degree_sequence(b):
        return IsoResult.differ("degree_sequence")
    if n == 0:
        return IsoResult.found(a, b, ())
    u = disjoint_union(a, b)
    colors = color_refinement(u)
    if not _balanced(colors, n):
        return IsoResult.differ("wl_colors")
    mapping = _search(u, n, colors)
    if mapping is None:
        return IsoResult.differ("exhausted")
    return IsoResult.found(a, b, mapping)


def _balanced(colors: Sequence[int], n: int) -> bool:
    return Counter(colors[:n]) == Counter(colors[n:])


def _search(u: Graph, n: int, colors: list[int]) -> list[int] | None:
    cells: dict[int, tuple[list[int], list[int]]] = {}
    for v, c in enumerate(colors):
        left, right = cells.setdefault(c, ([], []))
        (left if v < n else right).append(v)
    target = None
    for c in sorted(cells):
        left, right = cells[c]
        if len(left) > 1 and (target is None or len(left) < len(cells[target][0])):
            target = c
    if target is None:
        mapping = [0] * n
        for left, right in cells.values():
            mapping[left[0]] = right[0] - n
        ok = all(
            u.has_edge(mapping[x] + n, mapping[y] + n) == u.has_edge(x, y)
            for x, y in combinations(range(n), 2)
        )
        return mapping if ok else None
    left, right = cells[target]
    v = left[0]
    fresh = max(colors) + 1
    for w in right:
        trial = list(colors)
        trial[v] = trial[w] = fresh
        refined = color_refinement(u, trial)
        if _balanced(refined, n):
            found = _search(u, n, refined)
            if found is not None:
                return found
    return None


def canonical_labeling_small(g: Graph) -> tuple[bytes, tuple[int, ...]]:
    """Least graph6 encoding over all relabelings, with the order achieving it.

    ``order[p]`` is the original vertex placed at position ``p``.
    """
    n = g.n
    if n > CANONICAL_MAX_VERTICES:
        raise UnsupportedSizeError(f"exhaustive canonization supports n <= {CANONICAL_MAX_VERTICES}, got {n}")
    rows = g.rows
    # Each state is (placed vertices in order, bitset of placed vertices).
    states: list[tuple[tuple[int, ...], int]] = [((), 0)]
    for _ in range(n):
        best = None
        keep: list[tuple[tuple[int, ...], int]] = []
        for placed, used in states:
            for v in range(n):
                if used >> v & 1:
                    continue
                row = rows[v]
                col = 0
                for x in placed:
                    col = col << 1 | (row >> x & 1)
                if best is None or col < best:
                    best = col
                    keep = [(placed + (v,), used | 1 << v)]
                elif col == best:
                    keep.append((placed + (v,), used | 1 << v))
        states = keep
    order = states[0][0] if states else ()
    perm = [0] * n
    for p, v in enumerate(order):
        perm[v] = p
    return encode_graph6(g.relabel(perm)), tuple(order)


def canonical_form_small(g: Graph) -> bytes:
    return canonical_labeling_small(g)[0]


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labeled graphs on ``n`` vertices."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield Graph._trusted(tuple(rows))


@lru_cache(maxsize=None)
def _canonical_forms(n: int) -> tuple[bytes, ...]:
    if n > CANONICAL_MAX_VERTICES:
        raise UnsupportedSizeError(f"enumeration supports n <= {CANONICAL_MAX_VERTICES}")
    if n == 0:
        return (encode_graph6(Graph(0)),)
    found = set()
    for code in _canonical_forms(n - 1):
        base = decode_graph6(code).rows
        for nbrs in range(1 << (n - 1)):
            rows = [r | ((nbrs >> v & 1) << (n - 1)) for v, r in enumerate(base)]
            rows.append(nbrs)
            found.add(canonical_form_small(Graph._trusted(tuple(rows))))
    return tuple(sorted(found))


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices, in canonical form.

    Built by adding a vertex in every possible way to each class on ``n - 1``
    vertices and deduplicating by canonical form.
    """
    return [decode_graph6(c) for c in _canonical_forms(n)]
