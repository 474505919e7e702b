"""Isomorphism-preserving reductions into restricted classes, and a checking harness.

A reduction maps graphs into a target class so that ``a ~ b`` iff
``R(a) ~ R(b)``.  The forward direction usually holds by construction; the
harness certifies both directions empirically against the oracle on corpora
of small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .expr import Cycle, Path, Union, to_text
from .graph import Graph, min_degree
from .induced import ClassSpec, first_forbidden
from .oracle import ORACLE_SOFT_BOUND, brute_force_iso


class ReductionDomainError(ValueError):
    def __init__(self, message: str, pair_index: int | None = None, position: int | None = None):
        self.pair_index = pair_index
        self.position = position
        super().__init__(message)


@dataclass(frozen=True)
class Reduction:
    name: str
    target_class: ClassSpec
    transform: Callable[[Graph], Graph]
    # Returns None when the graph is in the faithful domain, else the reason.
    domain_problem: Callable[[Graph], str | None] = lambda g: None
    # Optional structural certificate for images, beyond forbidden-subgraph membership.
    certificate: Callable[[Graph], object] | None = None

    def __call__(self, g: Graph) -> Graph:
        problem = self.domain_problem(g)
        if problem is not None:
            raise ReductionDomainError(f"{self.name}: {problem}")
        return self.transform(g)


# Split graphs are exactly the (2K2, C4, C5)-free graphs.
SPLIT_GRAPHS = ClassSpec((Union((Path(2), Path(2))), Cycle(4), Cycle(5)))


def _incidence_domain(g: Graph) -> str | None:
    if g.n < 2:
        return f"needs at least 2 vertices, got {g.n}"
    if min_degree(g) < 1:
        isolated = [v for v in range(g.n) if g.degrees[v] == 0]
        return f"isolated vertices {isolated} are outside the faithful domain"
    return None


def split_incidence_reduce(g: Graph) -> Graph:
    """Clique on the original vertices plus one vertex per edge, adjacent to its two ends.

    Output ids: original vertices keep theirs; edge ``{u, v}`` (u < v) gets
    ``n + k`` where ``k`` is its rank in lexicographic edge order.
    """
    problem = _incidence_domain(g)
    if problem is not None:
        raise ReductionDomainError(f"split_incidence: {problem}")
    n = g.n
    edges = g.edges()
    clique = (1 << n) - 1
    rows = [clique & ~(1 << v) for v in range(n)] + [0] * len(edges)
    for k, (u, v) in enumerate(edges):
        e = n + k
        rows[e] = 1 << u | 1 << v
        rows[u] |= 1 << e
        rows[v] |= 1 << e
    return Graph.from_rows(rows)


def split_partition(g: Graph) -> tuple[list[int], list[int]] | None:
    """A (clique, independent set) partition of ``g`` if it is a split graph.

    Uses the degree-sequence test: with degrees sorted descending and ``m``
    the largest index where ``d_m >= m - 1``, ``g`` is split iff
    ``sum_{i<=m} d_i == m(m-1) + sum_{i>m} d_i``; the top ``m`` vertices form the clique.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
    d = [g.degrees[v] for v in order]
    m = 0
    for i, di in enumerate(d, 1):
        if di >= i - 1:
            m = i
    if sum(d[:m]) != m * (m - 1) + sum(d[m:]):
        return None
    clique, indep = sorted(order[:m]), sorted(order[m:])
    assert _is_split_certificate(g, clique, indep)
    return clique, indep


def _is_split_certificate(g: Graph, clique: list[int], indep: list[int]) -> bool:
    cmask = sum(1 << v for v in clique)
    imask = sum(1 << v for v in indep)
    if cmask & imask or (cmask | imask) != g.vertex_mask:
        return False
    return all(g.rows[v] & cmask == cmask & ~(1 << v) for v in clique) and all(
        g.rows[v] & imask == 0 for v in indep
    )


def is_split(g: Graph) -> bool:
    return split_partition(g) is not None


SPLIT_INCIDENCE = Reduction(
    name="split_incidence",
    target_class=SPLIT_GRAPHS,
    transform=split_incidence_reduce,
    domain_problem=_incidence_domain,
    certificate=split_partition,
)

REDUCTIONS: dict[str, Reduction] = {SPLIT_INCIDENCE.name: SPLIT_INCIDENCE}


def register(reduction: Reduction) -> None:
    if reduction.name in REDUCTIONS:
        raise ValueError(f"reduction {reduction.name!r} already registered")
    REDUCTIONS[reduction.name] = reduction


@dataclass
class PairRecord:
    index: int
    sizes: tuple[int, int]
    image_sizes: tuple[int, int] = (0, 0)
    images_in_class: bool | None = None
    certificates: bool | None = None
    iso_before: bool | None = None
    iso_after: bool | None = None
    error: str | None = None

    @property
    def violation(self) -> bool:
        if self.error is not None:
            return False
        return not (self.images_in_class and self.certificates is not False and self.iso_before == self.iso_after)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "sizes": list(self.sizes),
            "image_sizes": list(self.image_sizes),
            "images_in_class": self.images_in_class,
            "certificates": self.certificates,
            "iso_before": self.iso_before,
            "iso_after": self.iso_after,
            "violation": self.violation,
            "error": self.error,
        }

    def to_line(self) -> str:
        status = "VIOLATION" if self.violation else ("SKIPPED" if self.error else "ok")
        line = (
            f"pair {self.index}: n={self.sizes[0]},{self.sizes[1]} -> {self.image_sizes[0]},{self.image_sizes[1]}"
            f" member={self.images_in_class} iso={self.iso_before}->{self.iso_after} {status}"
        )
        return line + (f" ({self.error})" if self.error else "")


@dataclass
class ReductionReport:
    reduction: str
    target_class: str
    records: list[PairRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[PairRecord]:
        return [r for r in self.records if r.violation]

    @property
    def skipped(self) -> list[PairRecord]:
        return [r for r in self.records if r.error is not None]

    def to_dict(self) -> dict:
        return {
            "reduction": self.reduction,
            "target_class": self.target_class,
            "pairs": len(self.records),
            "violations": len(self.violations),
            "skipped": len(self.skipped),
            "records": [r.to_dict() for r in self.records],
        }

    def to_text(self, all_lines: bool = False) -> str:
        head = (
            f"reduction {self.reduction} into {self.target_class}: {len(self.records)} pairs, "
            f"{len(self.violations)} violations, {len(self.skipped)} skipped"
        )
        shown = self.records if all_lines else [r for r in self.records if r.violation or r.error]
        return "\n".join([head] + [r.to_line() for r in shown]) + "\n"


def verify_reduction(
    r: Reduction,
    corpus: Iterable[tuple[Graph, Graph]],
    oracle_limit: int = ORACLE_SOFT_BOUND * 2,
) -> ReductionReport:
    """Check membership of images and ``oracle(a, b) == oracle(R(a), R(b))`` for every pair.

    Every corpus graph must be in the reduction's domain; the first one that
    is not raises ReductionDomainError naming the pair and position.
    Images above ``oracle_limit`` vertices are recorded as skipped.
    """
    pairs = list(corpus)
    for i, (a, b) in enumerate(pairs):
        for pos, g in enumerate((a, b)):
            problem = r.domain_problem(g)
            if problem is not None:
                raise ReductionDomainError(
                    f"{r.name}: pair {i}, graph {pos}: {problem}", pair_index=i, position=pos
                )
    report = ReductionReport(r.name, str(r.target_class))
    images: dict[Graph, tuple[Graph, bool, bool | None]] = {}

    def image(g: Graph):
        hit = images.get(g)
        if hit is None:
            out = r.transform(g)
            member = first_forbidden(out, r.target_class) is None
            cert = None if r.certificate is None else r.certificate(out) is not None
            hit = images[g] = (out, member, cert)
        return hit

    for i, (a, b) in enumerate(pairs):
        rec = PairRecord(i, (a.n, b.n))
        ra, ma, ca = image(a)
        rb, mb, cb = image(b)
        rec.image_sizes = (ra.n, rb.n)
        rec.images_in_class = ma and mb
        rec.certificates = None if ca is None else bool(ca and cb)
        if max(ra.n, rb.n) > oracle_limit:
            rec.error = f"image size above oracle bound {oracle_limit}"
        else:
            rec.iso_before = brute_force_iso(a, b).isomorphic
            rec.iso_after = brute_force_iso(ra, rb).isomorphic
        report.records.append(rec)
    return report


def describe(r: Reduction) -> str:
    return f"{r.name}: -> {', '.join(to_text(h) for h in r.target_class.forbidden)}-free"

