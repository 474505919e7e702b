"""Isomorphism for the classes of the ``bothsplit`` table rows.

Members are split recursively into components (UNION) and co-components
(JOIN), exactly like a cotree, except that a piece which is both connected
and co-connected becomes a PRIME leaf instead of a failure.  In the shipped
rows every prime piece is a path, a cycle, the complement of one of those, or
has at most five vertices; each of these has a relabeling-invariant code and a
canonical vertex order, so equal codes give an explicit isomorphism.

Why the shipped rows decompose this way:

* (paw, claw)-free: a connected paw-free graph is triangle-free or complete
  multipartite.  A prime piece is not complete multipartite (those have a
  disconnected complement), so it is triangle-free; being claw-free too, its
  maximum degree is at most two, i.e. a path or a cycle.
* (paw, co-paw)-free: a prime piece is triangle-free by the same argument and,
  applied to the complement, has no independent set of size three.  Ramsey
  R(3,3) = 6 then caps it at five vertices.
* complemented rows follow by swapping UNION and JOIN.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, co_components, complement, components, induced_subgraph, iter_bits
from .oracle import CANONICAL_MAX_VERTICES, IsoResult, canonical_labeling_small

UNION, JOIN, PRIME, LEAF = "union", "join", "prime", "leaf"


class OutsideStructureError(ValueError):
    """A prime piece matched none of the supported shapes."""


@dataclass(frozen=True)
class Piece:
    kind: str
    # For LEAF the single vertex; for PRIME the vertices in canonical order.
    vertices: tuple[int, ...]
    children: tuple[Piece, ...] = ()
    code: bytes = b""


def _walk_path(h: Graph) -> list[int]:
    ends = [v for v in range(h.n) if h.degrees[v] <= 1]
    order = [min(ends)]
    prev = -1
    while len(order) < h.n:
        nxt = [u for u in h.adjacency[order[-1]] if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _walk_cycle(h: Graph) -> list[int]:
    order = [0, min(h.adjacency[0])]
    while len(order) < h.n:
        a, b = h.adjacency[order[-1]]
        order.append(a if a != order[-2] else b)
    return order


def _path_or_cycle(h: Graph) -> tuple[bytes, list[int]] | None:
    # Only called on connected pieces.
    if max(h.degrees) > 2:
        return None
    if h.m == h.n - 1:
        return b"P%d" % h.n, _walk_path(h)
    if h.m == h.n and h.n >= 3:
        return b"C%d" % h.n, _walk_cycle(h)
    return None


def _prime_code(h: Graph) -> tuple[bytes, list[int]]:
    hit = _path_or_cycle(h)
    if hit is not None:
        return hit
    hit = _path_or_cycle(complement(h))
    if hit is not None:
        return b"co" + hit[0], hit[1]
    if h.n <= CANONICAL_MAX_VERTICES:
        form, order = canonical_labeling_small(h)
        return b"S%d:" % len(form) + form, list(order)
    raise OutsideStructureError(
        f"prime piece on {h.n} vertices is not a path, cycle, their complement, or small"
    )


def decompose(g: Graph) -> Piece:
    """Union/join decomposition with coded prime leaves, children sorted by code."""
    if g.n == 0:
        raise ValueError("the empty graph has no decomposition")
    return _decompose(g, g.vertex_mask)


def _decompose(g: Graph, mask: int) -> Piece:
    if mask & (mask - 1) == 0:
        return Piece(LEAF, (mask.bit_length() - 1,), (), b"L")
    parts = components(g, mask)
    kind = UNION
    if len(parts) == 1:
        parts = co_components(g, mask)
        kind = JOIN
    if len(parts) == 1:
        verts = list(iter_bits(mask))
        code, order = _prime_code(induced_subgraph(g, verts))
        return Piece(PRIME, tuple(verts[i] for i in order), (), b"Q[" + code + b"]")
    kids = sorted((_decompose(g, p) for p in parts), key=lambda k: k.code)
    tag = b"U(" if kind == UNION else b"J("
    return Piece(kind, (), tuple(kids), tag + b"".join(k.code for k in kids) + b")")


def decomposition_iso(a: Graph, b: Graph) -> IsoResult:
    """Isomorphism via decomposition codes; raises OutsideStructureError off the supported shapes."""
    if a.n != b.n:
        return IsoResult.differ("vertex_count", "bothsplit")
    if a.n == 0:
        return IsoResult.found(a, b, (), "bothsplit")
    ta, tb = decompose(a), decompose(b)
    if ta.code != tb.code:
        return IsoResult.differ("decomposition_code", "bothsplit")
    mapping = [0] * a.n
    stack = [(ta, tb)]
    while stack:
        x, y = stack.pop()
        if x.kind in (LEAF, PRIME):
            for u, v in zip(x.vertices, y.vertices):
                mapping[u] = v
        else:
            stack.extend(zip(x.children, y.children))
    return IsoResult.found(a, b, mapping, "bothsplit")
