"""Graph and colouring file formats.

Edge list::

    # comment lines start with '#'
    p <n> <m>
    <u> <v>            (m lines, 0-based)

A bipartite file uses the header ``b <n1> <n2>``; the left part is
``0..n1-1``, the right part ``n1..n1+n2-1`` and every edge joins the two.
Colourings use ``c <N> <k>`` followed by ``<u> <v> <colour>`` lines with
colours ``0..k-1``; the host graph is the set of listed pairs.
graph6 files hold one graph per line.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GraphFormatError
from .graph import BipartiteGraph, Graph

GRAPH6_MAX = 258047


# ---------------------------------------------------------------------------
# edge lists


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def _ints(tokens: list[str], count: int, no: int, what: str) -> list[int]:
    if len(tokens) != count:
        raise GraphFormatError(f"expected {what}", no)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {what}", no) from None


def _read_edges(lines, n: int, expected: int | None, header_no: int):
    seen = set()
    edges = []
    for no, tok in lines:
        u, v = _ints(tok, 2, no, "an edge '<u> <v>'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", no)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key}", no)
        seen.add(key)
        edges.append((key, no))
    if expected is not None and len(edges) != expected:
        raise GraphFormatError(f"header announces {expected} edges, found {len(edges)}", header_no)
    return edges


def loads_graph(text: str) -> Graph | BipartiteGraph:
    lines = _content_lines(text)
    try:
        no, head = next(lines)
    except StopIteration:
        raise GraphFormatError("empty graph file") from None
    if head[0] == "p":
        n, m = _ints(head[1:], 2, no, "header 'p <n> <m>'")
        if n < 0 or m < 0:
            raise GraphFormatError("negative size in header", no)
        edges = _read_edges(lines, n, m, no)
        return Graph.from_edges(n, [e for e, _ in edges])
    if head[0] == "b":
        n1, n2 = _ints(head[1:], 2, no, "header 'b <n1> <n2>'")
        if n1 < 0 or n2 < 0:
            raise GraphFormatError("negative size in header", no)
        edges = _read_edges(lines, n1 + n2, None, no)
        for (u, v), eno in edges:
            if not (u < n1 <= v):
                raise GraphFormatError(f"edge ({u}, {v}) does not join the two parts", eno)
        return BipartiteGraph.from_parts(n1, n2, [e for e, _ in edges])
    raise GraphFormatError(f"unknown header {head[0]!r}", no)


def dumps_graph(g: Graph) -> str:
    edges = list(g.edges())
    if isinstance(g, BipartiteGraph) and _is_standard_bipartite(g):
        out = [f"b {g.n1} {g.n2}"]
    else:
        out = [f"p {g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def _is_standard_bipartite(g: BipartiteGraph) -> bool:
    n1 = g.n1
    return g.left == (1 << n1) - 1 and g.right == ((1 << g.n) - 1) & ~g.left


def parse_graph(path) -> Graph | BipartiteGraph:
    """Read an edge-list file, or a graph6 file when the suffix is ``.g6``."""
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".g6":
        graphs = [from_graph6(line.strip()) for line in text.splitlines() if line.strip()]
        if len(graphs) != 1:
            raise GraphFormatError(f"expected one graph6 line, found {len(graphs)}")
        return graphs[0]
    return loads_graph(text)


def write_graph(g: Graph, path) -> None:
    p = Path(path)
    if p.suffix == ".g6":
        p.write_text(to_graph6(g) + "\n")
    else:
        p.write_text(dumps_graph(g))


# ---------------------------------------------------------------------------
# graph6


def _n_bytes(n: int) -> list[int]:
    if n < 63:
        return [n + 63]
    if n <= GRAPH6_MAX:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]


def to_graph6(g: Graph) -> str:
    bits = [(g.rows[j] >> i) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6)]
    return bytes(_n_bytes(g.n) + body).decode("ascii")


def from_graph6(s: str) -> Graph:
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= b < 64 for b in data):
        raise GraphFormatError("graph6 character outside the printable range")
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] == 63:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        pos = 8
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = [(b >> s) & 1 for b in body for s in range(5, -1, -1)]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# colourings


def loads_coloring(text: str):
    from .ramsey_lab.coloring import EdgeColoring

    lines = _content_lines(text)
    try:
        no, head = next(lines)
    except StopIteration:
        raise GraphFormatError("empty colouring file") from None
    if head[0] != "c":
        raise GraphFormatError("colouring file must start with 'c <N> <k>'", no)
    n, k = _ints(head[1:], 2, no, "header 'c <N> <k>'")
    if n < 0 or k < 1:
        raise GraphFormatError("colouring header needs N >= 0 and k >= 1", no)
    c = np.full((n, n), -1, dtype=np.int16)
    edges = []
    for no, tok in lines:
        u, v, col = _ints(tok, 3, no, "a coloured edge '<u> <v> <colour>'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", no)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", no)
        if not 0 <= col < k:
            raise GraphFormatError(f"colour {col} outside 0..{k - 1}", no)
        if c[u, v] >= 0:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", no)
        c[u, v] = c[v, u] = col
        edges.append((u, v))
    return EdgeColoring(Graph.from_edges(n, edges), k, c)


def dumps_coloring(col) -> str:
    out = [f"c {col.n} {col.k}"]
    out.extend(f"{u} {v} {c}" for u, v, c in col.edges())
    return "\n".join(out) + "\n"


def parse_coloring(path):
    return loads_coloring(Path(path).read_text())


def write_coloring(col, path) -> None:
    Path(path).write_text(dumps_coloring(col))
