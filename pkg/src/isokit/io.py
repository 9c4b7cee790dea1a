"""graph6 and JSON wire formats.

graph6 follows the usual definition: a size header N(n) followed by the upper
triangle of the adjacency matrix, column by column, packed six bits per
printable byte (value + 63).
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import Graph6Error, GraphFormatError
from .graph import ColoredGraph

__all__ = [
    "parse_graph6",
    "emit_graph6",
    "parse_json_graph",
    "emit_json_graph",
    "read_graph",
    "read_graphs",
]

MAX_GRAPH6_N = 2 ** 18
_HEADER = b">>graph6<<"


def _decode_size(data: bytes):
    """Return (n, header_length)."""
    if not data:
        raise Graph6Error("empty graph6 line", 0)
    for i, b in enumerate(data[:8]):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126", i)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(data) < start + width:
        raise Graph6Error("truncated size header", len(data))
    n = 0
    for b in data[start:start + width]:
        n = (n << 6) | (b - 63)
    return n, start + width


def parse_graph6(text) -> ColoredGraph:
    """Parse a single graph6 line (str or bytes)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    skip = 0
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
        skip = len(_HEADER)
    try:
        n, pos = _decode_size(data)
    except Graph6Error as exc:
        raise Graph6Error(str(exc).rsplit(" (byte", 1)[0], exc.offset + skip) from None
    if n > MAX_GRAPH6_N:
        raise Graph6Error(f"graph with {n} vertices exceeds the {MAX_GRAPH6_N} limit", skip)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = np.frombuffer(data[pos:], dtype=np.uint8)
    bad = np.flatnonzero((body < 63) | (body > 126))
    if len(bad):
        off = int(bad[0])
        raise Graph6Error(f"byte {int(body[off])!r} outside the graph6 range 63..126", skip + pos + off)
    if len(body) < nbytes:
        raise Graph6Error(f"truncated adjacency data: expected {nbytes} bytes, got {len(body)}", skip + len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after adjacency data", skip + pos + nbytes)
    bits = np.unpackbits((body - 63).astype(np.uint8)[:, None], axis=1)[:, 2:].reshape(-1)
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits", skip + pos + nbytes - 1)
    on = np.flatnonzero(bits[:nbits])
    # position p of pair (i, j), i < j, is j*(j-1)/2 + i
    j = ((1 + np.sqrt(1 + 8 * on.astype(np.float64))) // 2).astype(np.int64)
    j[j * (j - 1) // 2 > on] -= 1
    j[(j + 1) * j // 2 <= on] += 1
    i = on - j * (j - 1) // 2
    return ColoredGraph.from_edges(n, np.stack([i, j], axis=1))


def _encode_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def emit_graph6(g: ColoredGraph) -> str:
    """Encode the underlying uncolored graph (colors are not representable)."""
    n = g.n
    nbits = n * (n - 1) // 2
    bits = np.zeros(((nbits + 5) // 6) * 6, dtype=np.uint8)
    e = np.asarray(g.edges(), dtype=np.int64).reshape(-1, 2)
    bits[e[:, 1] * (e[:, 1] - 1) // 2 + e[:, 0]] = 1
    groups = bits.reshape(-1, 6)
    vals = (groups * np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)).sum(axis=1).astype(np.uint8) + 63
    return (_encode_size(n) + vals.tobytes()).decode("ascii")


def parse_json_graph(text) -> ColoredGraph:
    """Parse ``{n, edges, vertex_colors?, arc_colors?}``; ``arc_colors`` is a list of ``[v, w, c]``."""
    try:
        obj = json.loads(text) if isinstance(text, (str, bytes)) else text
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError("graph JSON needs the fields 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("'n' must be a non-negative integer")
    edges = obj["edges"]
    if not isinstance(edges, list) or any(
        not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, int) for x in e) for e in edges
    ):
        raise GraphFormatError("'edges' must be a list of integer pairs")
    arcs = {}
    for item in obj.get("arc_colors") or []:
        if not isinstance(item, list) or len(item) != 3 or not all(isinstance(x, int) for x in item):
            raise GraphFormatError("'arc_colors' entries must be [v, w, color]")
        v, w, c = item
        if (v, w) in arcs:
            raise GraphFormatError(f"arc ({v}, {w}) colored twice")
        arcs[(v, w)] = c
    try:
        return ColoredGraph.from_edges(n, edges, obj.get("vertex_colors"), arcs)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def graph_to_obj(g: ColoredGraph) -> dict:
    obj = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if not g.is_vertex_uncolored:
        obj["vertex_colors"] = g.vertex_colors.tolist()
    if not g.is_arc_uncolored:
        obj["arc_colors"] = [[v, w, c] for (v, w), c in sorted(g.arc_color_map().items()) if c]
    return obj


def emit_json_graph(g: ColoredGraph) -> str:
    return json.dumps(graph_to_obj(g), separators=(",", ":"))


def _sniff(path, fmt):
    if fmt and fmt != "auto":
        return fmt
    ext = os.path.splitext(str(path))[1].lower()
    return "json" if ext == ".json" else "graph6"


def read_graphs(path, fmt=None) -> list[ColoredGraph]:
    """Read every graph in a file: one JSON object, or one graph6 line per graph."""
    with open(path, "rb") as fh:
        data = fh.read()
    if _sniff(path, fmt) == "json":
        return [parse_json_graph(data)]
    return [parse_graph6(line) for line in data.splitlines() if line.strip()]


def read_graph(path, fmt=None) -> ColoredGraph:
    graphs = read_graphs(path, fmt)
    if len(graphs) != 1:
        raise GraphFormatError(f"{path}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]
