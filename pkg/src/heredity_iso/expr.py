"""Symbolic names for small forbidden graphs.

Grammar accepted by :func:`parse_expr`::

    expr := term ('+' term)*          '+' is disjoint union
    term := 'co(' expr ')' | 'P'k | 'K'n | 'I'n | 'C'n

Realized graphs number vertices leaf by leaf, left to right; paths are
numbered along the path and complements keep the numbering of their operand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union as _U

from . import graph as G
from .graph import Graph


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


@dataclass(frozen=True)
class Path:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"P{self.k}: paths need at least one vertex")


@dataclass(frozen=True)
class Complete:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"K{self.n}: negative size")


@dataclass(frozen=True)
class Independent:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"I{self.n}: negative size")


@dataclass(frozen=True)
class Cycle:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"C{self.n}: cycles need at least three vertices")


@dataclass(frozen=True)
class Union:
    children: tuple

    def __post_init__(self):
        flat = []
        for c in self.children:
            flat.extend(c.children if isinstance(c, Union) else (c,))
        if len(flat) < 2:
            raise ValueError("a union needs at least two operands; use union() to normalize")
        object.__setattr__(self, "children", tuple(flat))


@dataclass(frozen=True)
class Complement:
    child: "GraphExpr"


GraphExpr = _U[Path, Complete, Independent, Cycle, Union, Complement]


def union(*exprs: GraphExpr) -> GraphExpr:
    """Disjoint union, collapsing the single-operand case."""
    if len(exprs) == 1:
        return exprs[0]
    return Union(tuple(exprs))


def co(e: GraphExpr) -> GraphExpr:
    """Complement, cancelling a double complement."""
    return e.child if isinstance(e, Complement) else Complement(e)


def to_text(e: GraphExpr) -> str:
    if isinstance(e, Path):
        return f"P{e.k}"
    if isinstance(e, Complete):
        return f"K{e.n}"
    if isinstance(e, Independent):
        return f"I{e.n}"
    if isinstance(e, Cycle):
        return f"C{e.n}"
    if isinstance(e, Union):
        return "+".join(to_text(c) for c in e.children)
    if isinstance(e, Complement):
        return f"co({to_text(e.child)})"
    raise TypeError(f"not a graph expression: {e!r}")


def normalize(e: GraphExpr) -> GraphExpr:
    """Canonical syntactic form: unions flattened, operands sorted by printed form."""
    if isinstance(e, Union):
        kids = sorted((normalize(c) for c in e.children), key=to_text)
        return Union(tuple(kids))
    if isinstance(e, Complement):
        return Complement(normalize(e.child))
    return e


def realize(e: GraphExpr) -> Graph:
    return _realize_cached(e)


@lru_cache(maxsize=4096)
def _realize_cached(e: GraphExpr) -> Graph:
    if isinstance(e, Path):
        return G.path(e.k)
    if isinstance(e, Complete):
        return G.complete(e.n)
    if isinstance(e, Independent):
        return G.independent(e.n)
    if isinstance(e, Cycle):
        return G.cycle(e.n)
    if isinstance(e, Union):
        return G.disjoint_union(*(realize(c) for c in e.children))
    if isinstance(e, Complement):
        return G.complement(realize(e.child))
    raise TypeError(f"not a graph expression: {e!r}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ExprSyntaxError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> GraphExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return union(*terms)

    def number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def term(self) -> GraphExpr:
        ch = self.peek()
        start = self.pos
        if self.text.startswith("co(", self.pos):
            self.pos += 3
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return Complement(inner)
        if ch in ("P", "K", "I", "C"):
            self.pos += 1
            k = self.number()
            try:
                return {"P": Path, "K": Complete, "I": Independent, "C": Cycle}[ch](k)
            except ValueError as exc:
                self.error(str(exc), start)
        self.error("expected one of P, K, I, C or co(" if ch else "unexpected end of input")

    def parse(self) -> GraphExpr:
        e = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return e


def parse_expr(text: str) -> GraphExpr:
    return _Parser(text).parse()


def vertex_count(e: GraphExpr) -> int:
    return realize(e).n


def path_partitions(max_vertices: int, max_paths: int) -> list[tuple[int, ...]]:
    """Non-increasing tuples of positive path lengths, ordered by total then lexicographically."""
    out = []

    def grow(prefix: tuple[int, ...], remaining: int, cap: int):
        if prefix:
            out.append(prefix)
        if len(prefix) == max_paths:
            return
        for part in range(1, min(cap, remaining) + 1):
            grow(prefix + (part,), remaining - part, part)

    grow((), max_vertices, max_vertices)
    return sorted(out, key=lambda parts: (sum(parts), parts))


def enumerate_path_union_complements(max_vertices: int = 7, max_paths: int = 3) -> list[GraphExpr]:
    """Complements of disjoint unions of at most ``max_paths`` paths on at most ``max_vertices`` vertices."""
    if max_vertices < 1 or max_paths < 1:
        raise ValueError("bounds must be at least 1")
    return [Complement(union(*(Path(k) for k in parts))) for parts in path_partitions(max_vertices, max_paths)]


def exception_set() -> list[GraphExpr]:
    """The three graphs P4+K1, K2+I2 and P3+I2."""
    return [
        Union((Path(4), Complete(1))),
        Union((Complete(2), Independent(2))),
        Union((Path(3), Independent(2))),
    ]


def is_basic(h: Graph | GraphExpr) -> bool:
    """Complete and edgeless graphs are the basic forbidden graphs."""
    g = h if isinstance(h, Graph) else realize(h)
    return g.m == 0 or g.m == g.n * (g.n - 1) // 2
