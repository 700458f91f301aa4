"""Ground-truth graphs, the online revelation model, and exact primitives.

Vertices are dense integer indices 0..n-1 and double as the total order used
for every tie-break. Edge costs are non-negative integers; all arithmetic in
this module is exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


class GraphError(Exception):
    pass


class Disconnected(GraphError):
    pass


class NoPath(GraphError):
    pass


class TooLarge(GraphError):
    pass


HELD_KARP_LIMIT = 14


class Graph:
    """Undirected connected graph with non-negative integer edge costs.

    Rejects self-loops, multi-edges, out-of-range endpoints and negative
    costs at construction, and requires connectivity.
    """

    def __init__(self, n, edges):
        if n < 1:
            raise GraphError("need at least one vertex")
        self.n = n
        self.adj = [dict() for _ in range(n)]
        self._costs = {}
        for u, v, c in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if c < 0:
                raise GraphError(f"negative cost on edge ({u},{v})")
            key = (u, v) if u < v else (v, u)
            if key in self._costs:
                raise GraphError(f"multi-edge ({key[0]},{key[1]})")
            self._costs[key] = c
            self.adj[u][v] = c
            self.adj[v][u] = c
        if n > 1 and not self._connected():
            raise Disconnected("graph is not connected")

    def _connected(self):
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def cost(self, u, v):
        return self._costs[(u, v) if u < v else (v, u)]

    def edges(self):
        """Edges as (u, v, cost) with u < v, sorted by (u, v)."""
        return [(u, v, c) for (u, v), c in sorted(self._costs.items())]

    @property
    def m(self):
        return len(self._costs)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._costs == other._costs
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Instance:
    """A graph together with the designated start vertex."""

    graph: Graph
    start: int = 0

    def __post_init__(self):
        if not (0 <= self.start < self.graph.n):
            raise GraphError(f"start {self.start} not a vertex")


class ExplorationState:
    """What the searcher knows mid-run.

    `known` maps every labeled vertex to its known incident edges. A vertex
    is labeled once some incident edge is revealed; it is explored once it
    has been physically visited, at which point all its incident edges enter
    `known` (the revelation rule of the exploration model).
    """

    def __init__(self, instance):
        self.instance = instance
        self.graph = instance.graph
        self.start = instance.start
        self.explored = set()
        self.known = {}
        self.position = instance.start
        self.total_cost = 0
        self.walk = []
        self.exploration_order = []
        self.reveal(instance.start)

    def reveal(self, v):
        """Mark v explored and add its incident edges to the known graph.

        Idempotent for already-explored vertices. v must be the start or
        already labeled in the known graph.
        """
        if v in self.explored:
            return
        if v != self.start and v not in self.known:
            raise GraphError(f"cannot reveal unlabeled vertex {v}")
        self.explored.add(v)
        self.exploration_order.append(v)
        mine = self.known.setdefault(v, {})
        for w, c in self.graph.adj[v].items():
            mine[w] = c
            self.known.setdefault(w, {})[v] = c

    def traverse(self, path):
        """Walk along a path of vertices, revealing every first visit.

        The path must start at the current position and use known edges.
        """
        if not path or path[0] != self.position:
            raise GraphError("traversal must start at the current position")
        for prev, nxt in zip(path, path[1:]):
            if nxt not in self.known.get(prev, {}):
                raise GraphError(f"edge ({prev},{nxt}) not known")
            self.total_cost += self.known[prev][nxt]
            self.walk.append((prev, nxt))
            self.position = nxt
            self.reveal(nxt)

    def unexplored(self):
        """Labeled but not yet explored vertices, ascending."""
        return sorted(v for v in self.known if v not in self.explored)

    @property
    def fully_explored(self):
        return len(self.explored) == self.graph.n


def shortest_path(adj, a, b):
    """Minimum-cost path from a to b over the given adjacency.

    Ties are broken toward the lexicographically smallest vertex sequence,
    so the result is deterministic. Returns (path, cost) with path a list of
    vertices; a == b gives ([a], 0). Raises NoPath if b is unreachable.
    """
    if a == b:
        return [a], 0
    heap = [(0, (a,))]
    settled = set()
    while heap:
        dist, path = heapq.heappop(heap)
        v = path[-1]
        if v in settled:
            continue
        settled.add(v)
        if v == b:
            return list(path), dist
        for w, c in adj[v].items():
            if w not in settled:
                heapq.heappush(heap, (dist + c, path + (w,)))
    raise NoPath(f"no path from {a} to {b} in the known graph")


def shortest_distances(adj, source):
    """Dijkstra distances from source to every reachable vertex."""
    dist = {source: 0}
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w, c in adj[v].items():
            nd = d + c
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist


def nearest_in(adj, source, targets):
    """Closest member of `targets` from source, ties by vertex index.

    Returns (vertex, distance) or None if no target is reachable.
    """
    targets = set(targets)
    if not targets:
        return None
    if source in targets:
        return source, 0
    dist = {source: 0}
    heap = [(0, source)]
    best = None
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        if best is not None and d > best[1]:
            break
        if v in targets:
            if best is None or (d, v) < (best[1], best[0]):
                best = (v, d)
            continue
        for w, c in adj[v].items():
            nd = d + c
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return best


def mst(graph):
    """Minimum spanning tree via Kruskal, deterministic under index ties.

    Returns (edges, cost) with edges sorted (u, v) pairs, u < v.
    """
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    total = 0
    for u, v, c in sorted(graph.edges(), key=lambda e: (e[2], e[0], e[1])):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append((u, v))
            total += c
            if len(tree) == graph.n - 1:
                break
    if len(tree) != graph.n - 1:
        raise Disconnected("graph is not connected")
    tree.sort()
    return tree, total


def metric_closure(graph):
    """All-pairs shortest-path distances as a list of per-vertex dicts."""
    return [shortest_distances(graph.adj, v) for v in range(graph.n)]


def exact_opt(graph, start=0):
    """Minimum cost of a closed walk from start visiting every vertex.

    Revisits are allowed, so this is the TSP optimum over the metric
    closure, solved by dynamic programming over vertex subsets. Exact but
    exponential; refuses n above HELD_KARP_LIMIT.
    """
    n = graph.n
    if n > HELD_KARP_LIMIT:
        raise TooLarge(f"exact solver limited to n <= {HELD_KARP_LIMIT}, got {n}")
    if n == 1:
        return 0
    dist = metric_closure(graph)
    others = [v for v in range(n) if v != start]
    index = {v: i for i, v in enumerate(others)}
    full = (1 << len(others)) - 1
    dp = [[None] * len(others) for _ in range(full + 1)]
    for v in others:
        dp[1 << index[v]][index[v]] = dist[start][v]
    for mask in range(1, full + 1):
        for j in range(len(others)):
            cur = dp[mask][j]
            if cur is None or not (mask >> j) & 1:
                continue
            vj = others[j]
            for k in range(len(others)):
                if (mask >> k) & 1:
                    continue
                nmask = mask | (1 << k)
                cand = cur + dist[vj][others[k]]
                if dp[nmask][k] is None or cand < dp[nmask][k]:
                    dp[nmask][k] = cand
    return min(dp[full][j] + dist[others[j]][start] for j in range(len(others)))


def exact_opt_cycle(graph, start=0):
    """Like exact_opt but also returns one optimal closure cycle.

    The cycle is the visiting order over the metric closure; expand each hop
    with shortest_path to obtain a concrete walk.
    """
    n = graph.n
    if n > HELD_KARP_LIMIT:
        raise TooLarge(f"exact solver limited to n <= {HELD_KARP_LIMIT}, got {n}")
    if n == 1:
        return 0, [start]
    dist = metric_closure(graph)
    others = [v for v in range(n) if v != start]
    index = {v: i for i, v in enumerate(others)}
    full = (1 << len(others)) - 1
    dp = {}
    for v in others:
        dp[(1 << index[v], index[v])] = (dist[start][v], (start, v))
    for mask in range(1, full + 1):
        for j in range(len(others)):
            entry = dp.get((mask, j))
            if entry is None:
                continue
            cur, path = entry
            vj = others[j]
            for k in range(len(others)):
                if (mask >> k) & 1:
                    continue
                nmask = mask | (1 << k)
                cand = (cur + dist[vj][others[k]], path + (others[k],))
                old = dp.get((nmask, k))
                if old is None or cand < old:
                    dp[(nmask, k)] = cand
    best = min(
        (dp[(full, j)][0] + dist[others[j]][start], dp[(full, j)][1])
        for j in range(len(others))
    )
    return best[0], list(best[1]) + [start]
