"""Instance acquisition: file loaders and graph generators.

Two text formats are read: the plain edge-list format (header `n m`, then
one `u v c` line per edge) and a subset of TSPLIB (EUC_2D coordinates or
EXPLICIT matrices in the common symmetric layouts).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

from .graphs import Graph, GraphError, Instance


class ParseError(GraphError):
    pass


class UnsupportedFormat(GraphError):
    pass


def load_graph_file(path):
    """Read an edge-list instance; start vertex is always 0."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ParseError("line 1: empty file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("line 1: expected header `n m`")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("line 1: expected header `n m`")
    edges = []
    for lineno, raw in enumerate(lines[1:], 2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected `u v c`")
        try:
            edges.append((int(parts[0]), int(parts[1]), int(parts[2])))
        except ValueError:
            raise ParseError(f"line {lineno}: expected `u v c`")
    if len(edges) != m:
        raise ParseError(f"header announced {m} edges, found {len(edges)}")
    try:
        graph = Graph(n, edges)
    except GraphError as exc:
        if type(exc) is not GraphError:
            raise  # Disconnected passes through unchanged
        raise ParseError(str(exc))
    return Instance(graph)


def save_graph_file(path, graph):
    out = [f"{graph.n} {graph.m}"]
    out.extend(f"{u} {v} {c}" for u, v, c in graph.edges())
    Path(path).write_text("\n".join(out) + "\n")


def _nint(x):
    return int(x + 0.5)


_EXPLICIT_FORMATS = {
    "FULL_MATRIX",
    "UPPER_ROW",
    "LOWER_ROW",
    "UPPER_DIAG_ROW",
    "LOWER_DIAG_ROW",
}


def load_tsplib(path):
    """Read a symmetric TSPLIB instance (EUC_2D or EXPLICIT) as a complete graph."""
    fields = {}
    coords = {}
    weights = []
    mode = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if mode == "coords":
            parts = line.split()
            try:
                idx = int(parts[0])
                x, y = float(parts[1]), float(parts[2])
            except (ValueError, IndexError):
                raise ParseError(f"line {lineno}: expected `index x y`")
            coords[idx] = (x, y)
            continue
        if mode == "weights":
            try:
                weights.extend(float(tok) for tok in line.split())
            except ValueError:
                raise ParseError(f"line {lineno}: bad weight entry")
            continue
        if line == "NODE_COORD_SECTION":
            mode = "coords"
            continue
        if line == "EDGE_WEIGHT_SECTION":
            mode = "weights"
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
            continue
        raise ParseError(f"line {lineno}: unrecognized line {line!r}")

    if fields.get("TYPE", "TSP") != "TSP":
        raise UnsupportedFormat(f"TYPE {fields.get('TYPE')!r} not supported")
    try:
        n = int(fields["DIMENSION"])
    except KeyError:
        raise ParseError("missing DIMENSION")
    except ValueError:
        raise ParseError(f"bad DIMENSION {fields['DIMENSION']!r}")

    ewt = fields.get("EDGE_WEIGHT_TYPE")
    if ewt == "EUC_2D":
        missing = [i for i in range(1, n + 1) if i not in coords]
        if missing:
            raise ParseError(f"missing coordinates for node {missing[0]}")
        cost = [[0] * n for _ in range(n)]
        for u in range(n):
            xu, yu = coords[u + 1]
            for v in range(u + 1, n):
                xv, yv = coords[v + 1]
                cost[u][v] = _nint(math.dist((xu, yu), (xv, yv)))
    elif ewt == "EXPLICIT":
        fmt = fields.get("EDGE_WEIGHT_FORMAT")
        if fmt not in _EXPLICIT_FORMATS:
            raise UnsupportedFormat(f"EDGE_WEIGHT_FORMAT {fmt!r} not supported")
        cost = _fill_matrix(n, fmt, [_nint(w) for w in weights])
    else:
        raise UnsupportedFormat(f"EDGE_WEIGHT_TYPE {ewt!r} not supported")

    edges = [(u, v, cost[u][v]) for u in range(n) for v in range(u + 1, n)]
    try:
        graph = Graph(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc))
    return Instance(graph)


def _fill_matrix(n, fmt, entries):
    if fmt == "FULL_MATRIX":
        pairs = [(u, v) for u in range(n) for v in range(n)]
    elif fmt == "UPPER_ROW":
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif fmt == "LOWER_ROW":
        pairs = [(u, v) for u in range(n) for v in range(u)]
    elif fmt == "UPPER_DIAG_ROW":
        pairs = [(u, v) for u in range(n) for v in range(u, n)]
    else:
        pairs = [(u, v) for u in range(n) for v in range(u + 1)]
    if len(entries) != len(pairs):
        raise ParseError(
            f"EDGE_WEIGHT_SECTION holds {len(entries)} entries, expected {len(pairs)}"
        )
    cost = [[None] * n for _ in range(n)]
    for (u, v), w in zip(pairs, entries):
        cost[u][v] = w
        if cost[v][u] is None:
            cost[v][u] = w
        elif cost[v][u] != w:
            raise ParseError(f"matrix not symmetric at ({u}, {v})")
    return cost


@dataclass(frozen=True)
class RosenkrantzParams:
    i: int
    scale: int = 1

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("size parameter i must be >= 1")
        if self.scale < 1:
            raise ValueError("scale must be >= 1")


def gen_rosenkrantz(params):
    """Caterpillar family on which nearest-neighbor pays one sweep per level.

    A spine path 0..2^i (edge cost = scale) carries one pendant vertex per
    interior position p, attached at cost 2^(l-1)*scale + l where level
    l = v2(p) + 1. The additive deltas grow by exactly 1 per level, which
    makes every nearest-neighbor comparison strict: the spine is crawled
    first (pendants cost scale+1 > scale), then level-1 pendants are swept,
    then level-2, and so on, each sweep re-crossing the spine. Sweeping a
    deeper pendant early would cost one delta more than staying in the
    current level. Total NN cost grows linearly in i against an MST of
    roughly (1 + i/2) spine weights.
    """
    m = 2 ** params.i
    s = params.scale
    edges = [(j, j + 1, s) for j in range(m)]
    for pos in range(1, m):
        level = (pos & -pos).bit_length()
        edges.append((pos, m + pos, 2 ** (level - 1) * s + level))
    return Instance(Graph(2 * m, edges))


def gen_random(n, density, max_cost, seed):
    """Random connected instance: a spanning tree plus a density-driven extra."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    if max_cost < 1:
        raise ValueError("max_cost must be >= 1")
    rng = random.Random(seed)
    edges = []
    tree = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v, rng.randint(1, max_cost)))
        tree.add((u, v))
    pool = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in tree
    ]
    rng.shuffle(pool)
    extra = round(density * len(pool))
    for u, v in pool[:extra]:
        edges.append((u, v, rng.randint(1, max_cost)))
    return Instance(Graph(n, edges))
