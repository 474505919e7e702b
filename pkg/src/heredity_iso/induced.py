"""Induced subgraph search and membership in classes defined by forbidden induced subgraphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .expr import GraphExpr, realize, to_text
from .graph import Graph, VertexMapping, is_induced_copy, iter_bits


@dataclass(frozen=True)
class ClassSpec:
    """The graphs containing none of ``forbidden`` as an induced subgraph."""

    forbidden: tuple[GraphExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        if not self.forbidden:
            raise ValueError("a class needs at least one forbidden graph")
        for h in self.forbidden:
            if realize(h).n < 1:
                raise ValueError(f"forbidden graph {to_text(h)} has no vertices")

    def __str__(self) -> str:
        return "(" + ", ".join(to_text(h) for h in self.forbidden) + ")-free"


def _search_order(h: Graph) -> list[int]:
    # Highest degree first, then repeatedly the vertex with most already-placed
    # neighbours; ties go to higher degree, then lower id.
    if h.n == 0:
        return []
    order = [max(range(h.n), key=lambda v: (h.degrees[v], -v))]
    placed = 1 << order[0]
    while len(order) < h.n:
        best = max(
            (v for v in range(h.n) if not placed >> v & 1),
            key=lambda v: ((h.rows[v] & placed).bit_count(), h.degrees[v], -v),
        )
        order.append(best)
        placed |= 1 << best
    return order


def find_induced(g: Graph, h: Graph) -> VertexMapping | None:
    """Return an embedding of ``h`` as an induced subgraph of ``g``, or None.

    Entry ``i`` of the result is the host vertex playing pattern vertex ``i``.
    Candidates are tried in ascending host id, so the witness is deterministic.
    """
    if h.n > g.n:
        return None
    if h.n == 0:
        return ()
    order = _search_order(h)
    hn, gn = h.n, g.n
    h_deg = h.degrees
    g_deg = g.degrees
    full = g.vertex_mask
    # Degree and co-degree compatibility pre-filters per pattern vertex.
    allowed = []
    for i in range(hn):
        co_i = hn - 1 - h_deg[i]
        mask = 0
        for v in range(gn):
            if g_deg[v] >= h_deg[i] and gn - 1 - g_deg[v] >= co_i:
                mask |= 1 << v
        allowed.append(mask)
    g_rows = g.rows
    h_rows = h.rows
    image = [0] * hn
    # For each depth, the earlier positions in `order` and whether they are adjacent.
    constraints = []
    for d, i in enumerate(order):
        constraints.append([(j, bool(h_rows[i] >> j & 1)) for j in order[:d]])

    def extend(depth: int, used: int) -> bool:
        if depth == hn:
            return True
        i = order[depth]
        cand = allowed[i] & ~used
        for j, adjacent in constraints[depth]:
            w = image[j]
            cand &= g_rows[w] if adjacent else full & ~g_rows[w]
            if not cand:
                return False
        for v in iter_bits(cand):
            image[i] = v
            if extend(depth + 1, used | 1 << v):
                return True
        return False

    if not extend(0, 0):
        return None
    result = tuple(image)
    if not is_induced_copy(g, h, result):
        raise AssertionError("induced search produced an invalid embedding")
    return result


def contains_induced(g: Graph, h: Graph) -> bool:
    return find_induced(g, h) is not None


def first_forbidden(g: Graph, spec: ClassSpec | Sequence[GraphExpr]) -> tuple[GraphExpr, VertexMapping] | None:
    """The first forbidden graph found in ``g`` with its embedding, or None if ``g`` is a member."""
    forbidden = spec.forbidden if isinstance(spec, ClassSpec) else tuple(spec)
    for h in forbidden:
        hit = find_induced(g, realize(h))
        if hit is not None:
            return h, hit
    return None


def is_member(g: Graph, spec: ClassSpec | Sequence[GraphExpr]) -> bool:
    return first_forbidden(g, spec) is None
