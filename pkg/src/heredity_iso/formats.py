"""graph6 and plain edge-list reading/writing.

graph6 layout: a size prefix N(n) followed by the upper triangle of the
adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),... packed six bits
per byte, most significant bit first, each byte offset by 63.
"""

from __future__ import annotations

import re

from .graph import Graph

GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    """Malformed graph input.  ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    if n < 1 << 36:
        return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"graph too large for graph6: n={n}")


def encode_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_size(g.n))
    rows = g.rows
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def _decode_size(data: bytes) -> tuple[int, int]:
    def sixbits(pos: int) -> int:
        if pos >= len(data):
            raise FormatError("truncated size prefix", pos)
        b = data[pos]
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside the printable graph6 range", pos)
        return b - 63

    if not data:
        raise FormatError("empty graph6 input", 0)
    first = sixbits(0)
    if first < 63:
        return first, 1
    if len(data) > 1 and data[1] == 126:
        n = 0
        for pos in range(2, 8):
            n = n << 6 | sixbits(pos)
        return n, 8
    n = 0
    for pos in range(1, 4):
        n = n << 6 | sixbits(pos)
    return n, 4


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    base = 0
    if data.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    data = data.rstrip(b"\r\n")
    n, pos = _decode_size(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        at = base + pos + min(len(body), need)
        raise FormatError(f"expected {need} data bytes for n={n}, found {len(body)}", at)
    rows = [0] * n
    i, j = 0, 1
    for k, b in enumerate(body):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside the printable graph6 range", base + pos + k)
        val = b - 63
        for shift in range(5, -1, -1):
            if j >= n:
                if val >> shift & 1:
                    raise FormatError("non-zero padding bits", base + pos + k)
                continue
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._trusted(tuple(rows))


def encode_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


_INT_PAIR = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")


def decode_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``.

    Blank lines and ``#`` comments are ignored.
    """
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    entries = [(no, ln) for no, ln in enumerate(lines, 1) if ln.strip()]
    if not entries:
        raise FormatError("empty edge list")
    pairs = []
    for no, ln in entries:
        match = _INT_PAIR.match(ln)
        if not match:
            raise FormatError(f"line {no}: expected two non-negative integers, got {ln.strip()!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
    (n, m), edges = pairs[0], pairs[1:]
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def detect_format(data: bytes) -> str:
    """Return ``"edges"`` if the first non-blank line is an ``n m`` header, else ``"graph6"``."""
    for line in data.splitlines():
        if line.strip() and not line.lstrip().startswith(b"#"):
            return "edges" if _INT_PAIR.match(line.decode("ascii", errors="replace")) else "graph6"
    return "graph6"


def read_graph(data: bytes, fmt: str | None = None) -> Graph:
    fmt = fmt or detect_format(data)
    if fmt == "edges":
        return decode_edge_list(data.decode("ascii", errors="replace"))
    if fmt == "graph6":
        stripped = data.strip(b" \t\r\n")
        lead = len(data) - len(data.lstrip(b" \t\r\n"))
        try:
            return decode_graph6(stripped)
        except FormatError as exc:
            if exc.offset is not None and lead:
                raise FormatError(str(exc).rsplit(" (at byte", 1)[0], exc.offset + lead) from None
            raise
    raise ValueError(f"unknown format {fmt!r}")


def write_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "edges":
        return encode_edge_list(g)
    return encode_graph6(g).decode("ascii") + "\n"
