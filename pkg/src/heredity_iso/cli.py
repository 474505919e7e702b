"""Command-line front end.

Exit codes: 0 = yes (isomorphic, member, success), 1 = no (non-isomorphic,
non-member, failed self-test), 2 = error or refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import expr as E
from . import selftest
from .classify import Classifier, ForbiddenPair, MembershipError, TableError, iso_in_class, load_table
from .cograph import Cotree, build_cotree, canonical_code
from .formats import FormatError, read_graph, write_graph
from .induced import first_forbidden
from .oracle import CANONICAL_MAX_VERTICES, ORACLE_SOFT_BOUND, canonical_form_small
from .reductions import REDUCTIONS, ReductionDomainError

TABLE_ENV = "HEREDITY_ISO_TABLE"
EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    verdict: str
    witness: object = None
    flags: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "inputs": self.inputs, "verdict": self.verdict,
             "witness": self.witness, "flags": self.flags},
            sort_keys=True,
            indent=2,
        )


class CliError(Exception):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


def _read(path: str, fmt: str | None):
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return read_graph(data, fmt)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}", {"byte_offset": exc.offset}) from None


def _pair(args) -> ForbiddenPair:
    try:
        return ForbiddenPair.parse(args.h1, args.h2)
    except E.ExprSyntaxError as exc:
        raise CliError(str(exc), {"position": exc.pos}) from None


def _classifier(args) -> Classifier:
    path = args.table or os.environ.get(TABLE_ENV) or None
    try:
        return Classifier(load_table(path))
    except (OSError, TableError) as exc:
        raise CliError(f"cannot load classification table {path}: {exc}") from None


def cmd_classify(args):
    pair = _pair(args)
    status = _classifier(args).classify(pair)
    rec = OutputRecord("classify", {"h1": args.h1, "h2": args.h2}, str(status), None, status.to_dict())
    text = f"{pair}: {status} [{status.source or '-'}]"
    for note in status.notes:
        text += f"\n  note: {note}"
    return rec, text, EXIT_YES


def cmd_member(args):
    pair = _pair(args)
    g = _read(args.file, args.format)
    hit = first_forbidden(g, pair.spec)
    inputs = {"h1": args.h1, "h2": args.h2, "file": args.file}
    if hit is None:
        return OutputRecord("member", inputs, "member"), f"member of {pair.spec}", EXIT_YES
    h, witness = hit
    rec = OutputRecord("member", inputs, "non-member", {"forbidden": E.to_text(h), "vertices": list(witness)})
    return rec, f"not a member: induced {E.to_text(h)} on vertices {list(witness)}", EXIT_NO


def cmd_iso(args):
    pair = _pair(args)
    classifier = _classifier(args)
    a = _read(args.file_a, args.format)
    b = _read(args.file_b, args.format)
    inputs = {"h1": args.h1, "h2": args.h2, "file_a": args.file_a, "file_b": args.file_b}
    try:
        out = iso_in_class(pair, a, b, classifier, oracle_limit=args.oracle_limit)
    except MembershipError as exc:
        raise CliError(str(exc), {"graph": exc.which, "forbidden": E.to_text(exc.forbidden),
                                  "vertices": list(exc.witness)}) from None
    flags = {"status": str(out.status), "provenance": out.status.source,
             "oracle_answered": out.oracle_answered, "notes": list(out.notes + out.status.notes)}
    if out.refused:
        rec = OutputRecord("iso", inputs, "refused", None, dict(flags, refusal=out.refusal))
        return rec, f"refused: {out.refusal}", EXIT_ERROR
    r = out.result
    flags["method"] = r.method
    if r.isomorphic:
        rec = OutputRecord("iso", inputs, "isomorphic", {"mapping": list(r.mapping)}, flags)
        text = f"isomorphic ({r.method}{', oracle-answered' if out.oracle_answered else ''})\nmapping: {list(r.mapping)}"
        return rec, text, EXIT_YES
    rec = OutputRecord("iso", inputs, "non-isomorphic", {"invariant": r.witness}, flags)
    reason = _WITNESS_TEXT.get(r.witness, r.witness)
    return rec, f"non-isomorphic ({r.method}): {reason}", EXIT_NO


_WITNESS_TEXT = {
    "vertex_count": "vertex counts differ",
    "degree_sequence": "degree sequences differ",
    "wl_colors": "color refinement histograms differ",
    "exhausted": "exhaustive search found no isomorphism",
    "canonical_code": "cotree codes differ",
    "decomposition_code": "decomposition codes differ",
}


def cmd_canon(args):
    g = _read(args.file, args.format)
    inputs = {"file": args.file}
    if g.n <= CANONICAL_MAX_VERTICES:
        form = canonical_form_small(g).decode("ascii")
        return OutputRecord("canon", inputs, "canonical", form, {"method": "exhaustive-graph6"}), form, EXIT_YES
    t = build_cotree(g)
    if isinstance(t, Cotree):
        code = canonical_code(t).decode("ascii")
        return OutputRecord("canon", inputs, "canonical", code, {"method": "cotree-code"}), code, EXIT_YES
    raise CliError(
        f"no canonical form available: n={g.n} > {CANONICAL_MAX_VERTICES} and not a cograph",
        {"induced_p4": list(t.witness)},
    )


def cmd_reduce(args):
    g = _read(args.file, args.format)
    r = REDUCTIONS[args.reduction]
    try:
        out = r(g)
    except ReductionDomainError as exc:
        raise CliError(str(exc)) from None
    text = write_graph(out, args.format or "graph6").rstrip("\n")
    rec = OutputRecord("reduce", {"file": args.file, "reduction": r.name}, "reduced", text,
                       {"target_class": str(r.target_class), "n": out.n})
    return rec, text, EXIT_YES


def cmd_catalog(args):
    exc = [E.to_text(e) for e in E.exception_set()]
    cat = [E.to_text(e) for e in E.enumerate_path_union_complements(args.max_vertices, args.max_paths)]
    rec = OutputRecord("catalog", {"max_vertices": args.max_vertices, "max_paths": args.max_paths},
                       "catalog", {"exception_set": exc, "path_union_complements": cat})
    text = "exception set:\n" + "".join(f"  {x}\n" for x in exc)
    text += f"path-union complements ({len(cat)}):\n" + "".join(f"  {x}\n" for x in cat)
    return rec, text.rstrip("\n"), EXIT_YES


def cmd_selftest(args):
    checks = selftest.run(args.level, args.seed)
    failed = [c.name for c in checks if not c.passed]
    rec = OutputRecord("selftest", {"level": args.level, "seed": args.seed},
                       "fail" if failed else "pass", None,
                       {"checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]})
    return rec, selftest.report(checks).rstrip("\n"), EXIT_NO if failed else EXIT_YES


def _common(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON record")
    p.add_argument("--format", choices=("graph6", "edges"), default=d(None), help="input/output graph format")
    p.add_argument("--table", default=d(None), help=f"classification table file (fallback: ${TABLE_ENV})")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heredity-iso",
        description="Graph isomorphism on classes defined by two forbidden induced subgraphs.",
        parents=[_common(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(True)]

    p = sub.add_parser("classify", parents=common, help="complexity status of a forbidden pair")
    p.add_argument("h1")
    p.add_argument("h2")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("member", parents=common, help="test membership of a graph in the pair's class")
    p.add_argument("h1")
    p.add_argument("h2")
    p.add_argument("file")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("iso", parents=common, help="decide isomorphism of two members of a class")
    p.add_argument("h1")
    p.add_argument("h2")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--oracle-limit", type=int, default=ORACLE_SOFT_BOUND,
                   help="largest graph the exhaustive oracle will attempt")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("canon", parents=common, help="canonical form of a small graph or a cograph")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("reduce", parents=common, help="apply a GI-completeness reduction")
    p.add_argument("file")
    p.add_argument("--reduction", choices=sorted(REDUCTIONS), default="split_incidence")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("catalog", parents=common, help="list the exception set and path-union complements")
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--max-paths", type=int, default=3)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selftest", parents=common, help="run the exhaustive small-graph checks")
    p.add_argument("level", choices=("quick", "full"), nargs="?", default="quick")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        rec, text, code = args.func(args)
    except CliError as exc:
        inputs = {k: v for k, v in vars(args).items() if k not in ("func", "json")}
        rec, text, code = OutputRecord(args.command, inputs, "error", exc.witness, {"error": str(exc)}), None, EXIT_ERROR
        print(f"error: {exc}", file=sys.stderr)
    if args.json:
        print(rec.to_json())
    elif text is not None:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
