"""Immutable simple undirected graphs on dense vertex ids ``0..n-1``.

Adjacency is stored as one Python int per vertex, used as a bitset, so
neighbourhood intersections during backtracking are single ``&`` operations.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

# An injective map from the vertices of one graph into another.  Entry ``i``
# is the image of vertex ``i``.
VertexMapping = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A simple undirected graph.

    Vertices are ``0..n-1``.  Loops and repeated edges are rejected at
    construction; the object is never mutated afterwards.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"repeated edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self._rows = tuple(rows)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> Graph:
        """Build from adjacency bitsets, checking symmetry and irreflexivity."""
        n = len(rows)
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} references vertices outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        return cls._trusted(tuple(rows))

    @classmethod
    def _trusted(cls, rows: tuple[int, ...]) -> Graph:
        g = cls.__new__(cls)
        g.n = len(rows)
        g._rows = rows
        return g

    @property
    def rows(self) -> tuple[int, ...]:
        """Adjacency bitsets, one per vertex."""
        return self._rows

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return self.adjacency[v]

    @cached_property
    def adjacency(self) -> tuple[list[int], ...]:
        return tuple(list(iter_bits(r)) for r in self._rows)

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self._rows)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabel expects a permutation of 0..n-1")
        rows = [0] * self.n
        for v, row in enumerate(self._rows):
            r = 0
            for u in iter_bits(row):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return Graph._trusted(tuple(rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._rows == other._rows and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph._trusted(tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def disjoint_union(*graphs: Graph) -> Graph:
    """Concatenate graphs left to right; later graphs are shifted past earlier ones."""
    rows: list[int] = []
    for g in graphs:
        shift = len(rows)
        rows.extend(r << shift for r in g.rows)
    return Graph._trusted(tuple(rows))


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between vertices of different operands."""
    return complement(disjoint_union(*(complement(g) for g in graphs)))


def induced_subgraph(g: Graph, vs: Sequence[int]) -> Graph:
    """The subgraph induced on ``vs``; vertex ``i`` of the result is ``vs[i]``."""
    seen = set()
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
        if v in seen:
            raise ValueError(f"duplicate vertex {v}")
        seen.add(v)
    rows = []
    for v in vs:
        row = g.rows[v]
        r = 0
        for i, u in enumerate(vs):
            if row >> u & 1:
                r |= 1 << i
        rows.append(r)
    return Graph._trusted(tuple(rows))


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees)


def min_degree(g: Graph) -> int:
    return min(g.degrees, default=0)


def is_induced_copy(g: Graph, h: Graph, mapping: Sequence[int]) -> bool:
    """True if ``mapping`` embeds ``h`` into ``g`` preserving edges and non-edges."""
    if len(mapping) != h.n or len(set(mapping)) != h.n:
        return False
    if any(not 0 <= x < g.n for x in mapping):
        return False
    for i in range(h.n):
        for j in range(i + 1, h.n):
            if h.has_edge(i, j) != g.has_edge(mapping[i], mapping[j]):
                return False
    return True


def is_isomorphism(a: Graph, b: Graph, mapping: Sequence[int]) -> bool:
    if a.n != b.n or len(mapping) != a.n or sorted(mapping) != list(range(a.n)):
        return False
    for v, row in enumerate(a.rows):
        image = 0
        for u in iter_bits(row):
            image |= 1 << mapping[u]
        if image != b.rows[mapping[v]]:
            return False
    return True


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def components(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, as bitsets.

    Components are ordered by their smallest vertex.
    """
    if mask is None:
        mask = g.vertex_mask
    rows = g.rows
    out = []
    remaining = mask
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def co_components(g: Graph, mask: int | None = None) -> list[int]:
    """Components of the complement of ``g[mask]``, without building the complement."""
    if mask is None:
        mask = g.vertex_mask
    rows = g.rows
    out = []
    remaining = mask
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            rest = remaining & ~comp
            for v in iter_bits(frontier):
                nxt |= rest & ~rows[v]
                if nxt == rest:
                    break
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


# Named families used throughout.

def path(k: int) -> Graph:
    return Graph(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(k, [(i, i + 1) for i in range(k - 1)] + [(0, k - 1)])


def complete(k: int) -> Graph:
    return Graph(k, ((i, j) for i in range(k) for j in range(i + 1, k)))


def independent(k: int) -> Graph:
    return Graph(k)
