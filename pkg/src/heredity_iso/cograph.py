"""Cograph (P4-free graph) recognition, cotrees and canonical codes.

A graph is a cograph iff every induced subgraph on two or more vertices is
disconnected or has a disconnected complement.  The decomposition below
applies that rule top-down: components become children of a UNION node,
co-components children of a JOIN node.  It costs O(n^2 * depth / w) bit
operations rather than linear time, which is plenty for the sizes used here.

Canonical codes are persisted by the CLI as deduplication keys; their byte
format only changes with the package's major version.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union as _U

from .graph import Graph, co_components, components, induced_subgraph, is_induced_copy, iter_bits, path
from .induced import find_induced
from .oracle import IsoResult

LEAF, UNION, JOIN = "leaf", "union", "join"
_TAG = {UNION: b"U", JOIN: b"J"}


@dataclass(frozen=True)
class Cotree:
    kind: str
    vertex: int | None = None
    children: tuple[Cotree, ...] = ()

    @classmethod
    def leaf(cls, v: int) -> Cotree:
        return cls(LEAF, v)

    def leaves(self) -> list[int]:
        out, stack = [], [self]
        while stack:
            node = stack.pop()
            if node.kind == LEAF:
                out.append(node.vertex)
            else:
                stack.extend(reversed(node.children))
        return out


@dataclass(frozen=True)
class NotCograph:
    """An induced P4 ``a-b-c-d`` found in the input, as vertex ids in path order."""

    witness: tuple[int, int, int, int]


class NotCographError(ValueError):
    def __init__(self, witness: tuple[int, ...], which: str = "input"):
        self.witness = witness
        super().__init__(f"{which} is not a cograph: induced P4 on vertices {list(witness)}")


def _postorder(root: Cotree) -> list[Cotree]:
    out, stack = [], [root]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(node.children)
    out.reverse()
    return out


def _codes(root: Cotree) -> dict[int, bytes]:
    codes: dict[int, bytes] = {}
    for node in _postorder(root):
        if node.kind == LEAF:
            codes[id(node)] = b"L"
        else:
            kids = sorted(codes[id(c)] for c in node.children)
            codes[id(node)] = _TAG[node.kind] + b"(" + b"".join(kids) + b")"
    return codes


def canonical_code(t: Cotree) -> bytes:
    """Relabeling-invariant code: ``L`` for a leaf, ``U(...)``/``J(...)`` around sorted child codes."""
    return _codes(t)[id(t)]


def canonicalize(t: Cotree) -> Cotree:
    """Same tree with every node's children sorted by their canonical codes."""
    codes = _codes(t)
    rebuilt: dict[int, Cotree] = {}
    for node in _postorder(t):
        if node.kind == LEAF:
            rebuilt[id(node)] = node
        else:
            kids = sorted(node.children, key=lambda c: codes[id(c)])
            rebuilt[id(node)] = Cotree(node.kind, None, tuple(rebuilt[id(c)] for c in kids))
    return rebuilt[id(t)]


def build_cotree(g: Graph) -> Cotree | NotCograph:
    """Cotree of ``g`` in canonical child order, or an induced P4 if ``g`` is not a cograph."""
    if g.n == 0:
        raise ValueError("the empty graph has no cotree")
    # Top-down pass records (kind, vertex, child slots); children are always
    # created after their parent, so a reverse sweep builds bottom-up.
    specs: list[tuple[str, int | None, list[int]]] = []
    pending = [(g.vertex_mask, -1)]
    while pending:
        mask, parent = pending.pop()
        idx = len(specs)
        if parent >= 0:
            specs[parent][2].append(idx)
        if mask & (mask - 1) == 0:
            specs.append((LEAF, mask.bit_length() - 1, []))
            continue
        parts = components(g, mask)
        kind = UNION
        if len(parts) == 1:
            parts = co_components(g, mask)
            kind = JOIN
            if len(parts) == 1:
                return NotCograph(_p4_in(g, mask))
        specs.append((kind, None, []))
        pending.extend((p, idx) for p in reversed(parts))
    nodes: list[Cotree | None] = [None] * len(specs)
    for idx in range(len(specs) - 1, -1, -1):
        kind, vertex, kids = specs[idx]
        nodes[idx] = Cotree(kind, vertex, tuple(nodes[k] for k in kids))
    return canonicalize(nodes[0])


def _p4_in(g: Graph, mask: int) -> tuple[int, int, int, int]:
    verts = list(iter_bits(mask))
    hit = find_induced(induced_subgraph(g, verts), path(4))
    if hit is None:
        raise AssertionError("connected, co-connected graph without an induced P4")
    witness = tuple(verts[i] for i in hit)
    assert is_induced_copy(g, path(4), witness)
    return witness


def is_cograph(g: Graph) -> bool:
    return g.n == 0 or isinstance(build_cotree(g), Cotree)


def cotree_graph(t: Cotree) -> Graph:
    """Rebuild the graph: two leaves are adjacent iff their lowest common ancestor is a JOIN."""
    leaves = t.leaves()
    n = len(leaves)
    if sorted(leaves) != list(range(n)):
        raise ValueError("cotree leaves must be exactly 0..n-1")
    rows = [0] * n
    for kids in _join_sets(t):
        total = 0
        for m in kids:
            total |= m
        for m in kids:
            others = total & ~m
            for v in iter_bits(m):
                rows[v] |= others
    # Symmetric and loop-free by construction.
    return Graph._trusted(tuple(rows))


def _join_sets(t: Cotree):
    below: dict[int, int] = {}
    for node in _postorder(t):
        if node.kind == LEAF:
            below[id(node)] = 1 << node.vertex
            continue
        kids = [below[id(c)] for c in node.children]
        total = 0
        for m in kids:
            total |= m
        below[id(node)] = total
        if node.kind == JOIN:
            yield kids


def check_cotree(t: Cotree, n: int | None = None) -> None:
    """Raise ValueError unless arity, alternation and leaf-set invariants hold."""
    seen = []
    stack = [(t, None)]
    while stack:
        node, parent_kind = stack.pop()
        if node.kind == LEAF:
            if node.children:
                raise ValueError("leaf with children")
            seen.append(node.vertex)
            continue
        if node.kind not in (UNION, JOIN):
            raise ValueError(f"unknown node kind {node.kind!r}")
        if len(node.children) < 2:
            raise ValueError("internal node with fewer than two children")
        if node.kind == parent_kind:
            raise ValueError(f"{node.kind} node directly below another {node.kind} node")
        stack.extend((c, node.kind) for c in node.children)
    expected = range(n if n is not None else len(seen))
    if sorted(seen) != list(expected):
        raise ValueError("leaf set is not exactly the vertex set")


def _align(ta: Cotree, tb: Cotree, mapping: list[int]) -> None:
    codes_a, codes_b = _codes(ta), _codes(tb)
    stack = [(ta, tb)]
    while stack:
        x, y = stack.pop()
        if x.kind == LEAF:
            mapping[x.vertex] = y.vertex
            continue
        xs = sorted(x.children, key=lambda c: codes_a[id(c)])
        ys = sorted(y.children, key=lambda c: codes_b[id(c)])
        stack.extend(zip(xs, ys))


def cograph_iso(a: Graph, b: Graph) -> IsoResult:
    """Decide isomorphism of two cographs by comparing canonical cotree codes."""
    trees = []
    for which, g in (("first graph", a), ("second graph", b)):
        if g.n == 0:
            trees.append(None)
            continue
        t = build_cotree(g)
        if isinstance(t, NotCograph):
            raise NotCographError(t.witness, which)
        trees.append(t)
    ta, tb = trees
    if a.n != b.n:
        return IsoResult.differ("vertex_count", "cograph")
    if a.n == 0:
        return IsoResult.found(a, b, (), "cograph")
    if canonical_code(ta) != canonical_code(tb):
        return IsoResult.differ("canonical_code", "cograph")
    mapping = [0] * a.n
    _align(ta, tb, mapping)
    return IsoResult.found(a, b, mapping, "cograph")


def random_cotree(n: int, rng: random.Random | None = None, max_children: int = 4) -> Cotree:
    """A random cotree on leaves ``0..n-1`` (children in generation order, not canonical)."""
    if n < 1:
        raise ValueError("a cotree needs at least one leaf")
    rng = rng or random.Random(0)
    verts = list(range(n))
    rng.shuffle(verts)
    specs: list[tuple[str, int | None, list[int]]] = []
    pending = [(verts, rng.choice((UNION, JOIN)), -1)]
    while pending:
        group, kind, parent = pending.pop()
        idx = len(specs)
        if parent >= 0:
            specs[parent][2].append(idx)
        if len(group) == 1:
            specs.append((LEAF, group[0], []))
            continue
        specs.append((kind, None, []))
        k = rng.randint(2, min(max_children, len(group)))
        parts: list[list[int]] = [[v] for v in group[:k]]
        for v in group[k:]:
            parts[rng.randrange(k)].append(v)
        flip = JOIN if kind == UNION else UNION
        pending.extend((p, flip, idx) for p in parts)
    nodes: list[Cotree | None] = [None] * len(specs)
    for idx in range(len(specs) - 1, -1, -1):
        kind, vertex, kids = specs[idx]
        nodes[idx] = Cotree(kind, vertex, tuple(nodes[k] for k in kids))
    return nodes[0]


CotreeResult = _U[Cotree, NotCograph]
