"""Complexity status of isomorphism on (H1, H2)-free graphs, and dispatch.

Decision order for a pair:

1. a basic forbidden graph (complete or edgeless)   -> Unknown
2. class contained in a polynomial table row          -> Polynomial(method)
3. outside the exception region                       -> GI-complete
4. class contains a gi-complete table row             -> GI-complete
5. anything else in the exception region              -> Open

The exception region holds the pairs where, for (H1, H2) or for their
complements, one graph is P4+K1, K2+I2 or P3+I2 and the other is the
complement of a union of at most three paths on at most seven vertices.
Every comparison is up to isomorphism of the realized graphs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable

from . import expr as E
from .bothsplit import decomposition_iso
from .cograph import cograph_iso
from .formats import encode_graph6
from .graph import Graph, VertexMapping, complement
from .induced import ClassSpec, contains_induced, first_forbidden
from .oracle import CANONICAL_MAX_VERTICES, ORACLE_SOFT_BOUND, IsoResult, brute_force_iso, canonical_form_small

GI_COMPLETE, POLYNOMIAL, OPEN, UNKNOWN = "gi-complete", "polynomial", "open", "unknown"
METHODS = ("cograph", "bothsplit", "rao")
SUBCLASS_NOTE = "covered as a subclass of the row's class (induced-containment criterion)"


@dataclass(frozen=True)
class ClassificationStatus:
    kind: str
    method: str | None = None
    source: str | None = None
    reason: str | None = None
    via_complement: bool = False
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind != UNKNOWN and not self.source:
            raise ValueError("every known status needs a provenance tag")

    @property
    def is_polynomial(self) -> bool:
        return self.kind == POLYNOMIAL

    def __str__(self) -> str:
        if self.kind == POLYNOMIAL:
            return f"Polynomial({self.method})"
        if self.kind == GI_COMPLETE:
            return "GIComplete"
        if self.kind == OPEN:
            return "Open"
        return f"Unknown({self.reason})"

    def to_dict(self) -> dict:
        return {
            "status": str(self),
            "kind": self.kind,
            "method": self.method,
            "provenance": self.source,
            "reason": self.reason,
            "via_complement": self.via_complement,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ForbiddenPair:
    """An unordered pair of forbidden graphs."""

    h1: E.GraphExpr
    h2: E.GraphExpr

    def __post_init__(self):
        a, b = E.normalize(self.h1), E.normalize(self.h2)
        if E.to_text(b) < E.to_text(a):
            a, b = b, a
        object.__setattr__(self, "h1", a)
        object.__setattr__(self, "h2", b)

    @classmethod
    def parse(cls, t1: str, t2: str) -> ForbiddenPair:
        return cls(E.parse_expr(t1), E.parse_expr(t2))

    @property
    def spec(self) -> ClassSpec:
        return ClassSpec((self.h1, self.h2))

    def complemented(self) -> ForbiddenPair:
        return ForbiddenPair(E.co(self.h1), E.co(self.h2))

    def __str__(self) -> str:
        return f"({E.to_text(self.h1)}, {E.to_text(self.h2)})"


@dataclass(frozen=True)
class TableRow:
    h1: E.GraphExpr
    h2: E.GraphExpr
    kind: str
    method: str | None
    source: str


class TableError(ValueError):
    pass


def parse_table(text: str) -> tuple[TableRow, ...]:
    rows = []
    for no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\r\n").split("\t")
        if len(fields) != 4:
            raise TableError(f"line {no}: expected 4 tab-separated fields, got {len(fields)}")
        p1, p2, status, source = (f.strip() for f in fields)
        try:
            h1, h2 = E.parse_expr(p1), E.parse_expr(p2)
        except E.ExprSyntaxError as exc:
            raise TableError(f"line {no}: {exc}") from None
        if status == GI_COMPLETE:
            kind, method = GI_COMPLETE, None
        elif status.startswith("polynomial:") and status.split(":", 1)[1] in METHODS:
            kind, method = POLYNOMIAL, status.split(":", 1)[1]
        else:
            raise TableError(f"line {no}: unknown status {status!r}")
        if not source:
            raise TableError(f"line {no}: missing provenance")
        rows.append(TableRow(h1, h2, kind, method, source))
    return tuple(rows)


def default_table_text() -> str:
    return resources.files("heredity_iso").joinpath("data/dichotomy.tsv").read_text()


def load_table(path: str | os.PathLike | None = None) -> tuple[TableRow, ...]:
    if path is None:
        return parse_table(default_table_text())
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


# Small-graph helpers shared by all classifiers.

@lru_cache(maxsize=None)
def _iso_key(g: Graph) -> bytes:
    if g.n <= CANONICAL_MAX_VERTICES:
        return canonical_form_small(g)
    return b"raw:" + encode_graph6(g)


@lru_cache(maxsize=None)
def _contains(big: Graph, small: Graph) -> bool:
    return contains_induced(big, small)


@lru_cache(maxsize=None)
def _exception_keys() -> frozenset[bytes]:
    return frozenset(_iso_key(E.realize(e)) for e in E.exception_set())


@lru_cache(maxsize=None)
def _catalog_keys() -> frozenset[bytes]:
    return frozenset(_iso_key(E.realize(e)) for e in E.enumerate_path_union_complements(7, 3))


def _is_basic(g: Graph) -> bool:
    return E.is_basic(g)


def class_contained(pair: tuple[Graph, Graph], row: tuple[Graph, Graph]) -> bool:
    """Sufficient test that every ``pair``-free graph is ``row``-free.

    True when each row graph contains one of the pair graphs as an induced subgraph.
    """
    return all(any(_contains(r, h) for h in pair) for r in row)


def in_exception_region(g1: Graph, g2: Graph) -> bool:
    exc, cat = _exception_keys(), _catalog_keys()
    for x, y in ((g1, g2), (complement(g1), complement(g2))):
        kx, ky = _iso_key(x), _iso_key(y)
        if (kx in exc and ky in cat) or (ky in exc and kx in cat):
            return True
    return False


class Classifier:
    """Applies a fixed classification table; immutable after construction."""

    def __init__(self, rows: Iterable[TableRow] | None = None):
        self.rows = tuple(load_table() if rows is None else rows)
        self._realized = tuple(
            (row, (E.realize(row.h1), E.realize(row.h2))) for row in self.rows
        )
        self._cache: dict[tuple[Graph, Graph], ClassificationStatus] = {}

    def classify(self, pair: ForbiddenPair) -> ClassificationStatus:
        g1, g2 = E.realize(pair.h1), E.realize(pair.h2)
        key = tuple(sorted((g1, g2), key=_iso_key))
        key = (key[0], key[1])
        hit = self._cache.get(key)
        if hit is None:
            hit = self._classify_graphs(g1, g2)
            self._cache[key] = hit
        return hit

    def _matching_row(self, kind: str, g1: Graph, g2: Graph):
        pair = (g1, g2)
        co_pair = (complement(g1), complement(g2))
        for row, graphs in self._realized:
            if row.kind != kind:
                continue
            for via_complement, p in ((False, pair), (True, co_pair)):
                if kind == POLYNOMIAL and class_contained(p, graphs):
                    return row, via_complement
                if kind == GI_COMPLETE and class_contained(graphs, p):
                    return row, via_complement
        return None

    def _classify_graphs(self, g1: Graph, g2: Graph) -> ClassificationStatus:
        if _is_basic(g1) or _is_basic(g2):
            return ClassificationStatus(UNKNOWN, reason="basic case; out of scope")
        match = self._matching_row(POLYNOMIAL, g1, g2)
        if match is not None:
            row, via = match
            matched = (complement(g1), complement(g2)) if via else (g1, g2)
            row_keys = {_iso_key(E.realize(row.h1)), _iso_key(E.realize(row.h2))}
            notes = () if {_iso_key(x) for x in matched} == row_keys else (SUBCLASS_NOTE,)
            if row.method == "rao":
                notes += ("no specialised algorithm shipped; isomorphism queries use the oracle",)
            return ClassificationStatus(POLYNOMIAL, row.method, row.source, via_complement=via, notes=notes)
        if not in_exception_region(g1, g2):
            return ClassificationStatus(GI_COMPLETE, source="main-characterization")
        match = self._matching_row(GI_COMPLETE, g1, g2)
        if match is not None:
            row, via = match
            return ClassificationStatus(GI_COMPLETE, source=row.source, via_complement=via)
        return ClassificationStatus(OPEN, source="remaining-case")


@lru_cache(maxsize=1)
def default_classifier() -> Classifier:
    return Classifier()


def classify(pair: ForbiddenPair, classifier: Classifier | None = None) -> ClassificationStatus:
    return (classifier or default_classifier()).classify(pair)


# Dispatch.

class MembershipError(ValueError):
    def __init__(self, which: str, forbidden: E.GraphExpr, witness: VertexMapping):
        self.which = which
        self.forbidden = forbidden
        self.witness = witness
        super().__init__(
            f"{which} contains forbidden graph {E.to_text(forbidden)} on vertices {list(witness)}"
        )


class DispatchError(ValueError):
    pass


@dataclass(frozen=True)
class ClassIsoResult:
    status: ClassificationStatus
    result: IsoResult | None
    oracle_answered: bool = False
    refusal: str | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def refused(self) -> bool:
        return self.result is None


def _check_members(pair: ForbiddenPair, a: Graph, b: Graph) -> None:
    for which, g in (("first graph", a), ("second graph", b)):
        hit = first_forbidden(g, pair.spec)
        if hit is not None:
            raise MembershipError(which, *hit)


def iso_in_class(
    pair: ForbiddenPair,
    a: Graph,
    b: Graph,
    classifier: Classifier | None = None,
    oracle_limit: int = ORACLE_SOFT_BOUND,
) -> ClassIsoResult:
    """Decide isomorphism of two members of the pair's class with the best available method."""
    _check_members(pair, a, b)
    status = classify(pair, classifier)
    if status.is_polynomial and status.method in ("cograph", "bothsplit"):
        return ClassIsoResult(status, _specialised(status, a, b))
    note = f"{status} class: answered by the exhaustive oracle"
    if max(a.n, b.n) > oracle_limit:
        return ClassIsoResult(
            status, None, refusal=f"{a.n}/{b.n} vertices exceeds the oracle bound of {oracle_limit}", notes=(note,)
        )
    return ClassIsoResult(status, brute_force_iso(a, b), oracle_answered=True, notes=(note,))


def _specialised(status: ClassificationStatus, a: Graph, b: Graph) -> IsoResult:
    algorithm = cograph_iso if status.method == "cograph" else decomposition_iso
    if not status.via_complement:
        return algorithm(a, b)
    r = algorithm(complement(a), complement(b))
    if r.isomorphic:
        return IsoResult.found(a, b, r.mapping, r.method)
    return r


def bothsplit_iso(a: Graph, b: Graph, pair: ForbiddenPair, classifier: Classifier | None = None) -> IsoResult:
    status = classify(pair, classifier)
    if not (status.is_polynomial and status.method == "bothsplit"):
        raise DispatchError(f"pair {pair} is {status}, not covered by the bothsplit algorithm")
    _check_members(pair, a, b)
    return _specialised(status, a, b)
