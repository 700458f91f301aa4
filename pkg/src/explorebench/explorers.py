"""Online exploration strategies behind one uniform contract.

Each explorer, given the current exploration state, names the next
unexplored vertex to visit. The shared runner traverses a shortest path in
the currently known graph to reach it (first visits along the way count as
explorations), and finally returns to the start the same way.

All strategies here are pure functions of the exploration state, so every
run is deterministic and the per-step functions can be queried standalone.
"""

from __future__ import annotations

from .graphs import (
    ExplorationState,
    GraphError,
    nearest_in,
    shortest_distances,
    shortest_path,
)


class Stuck(GraphError):
    """An explorer named a vertex it is not allowed to name."""


class PredictionIncomplete(GraphError):
    pass


def nn_next(state):
    """The unexplored vertex closest to the position, ties by index."""
    hit = nearest_in(state.known, state.position, state.unexplored())
    if hit is None:
        raise Stuck("no unexplored vertex reachable")
    return hit[0]


def dfs_next(state):
    """Cheapest unexplored edge from the deepest live DFS vertex.

    The DFS stack is the exploration order with exhausted vertices removed;
    since an explored vertex never gains new incident edges, scanning the
    order backwards for the most recent vertex that still has an unexplored
    neighbor reproduces the stack top exactly. Vertices explored in passing
    join the stack like deliberately visited ones.
    """
    for v in reversed(state.exploration_order):
        best = None
        for w, c in state.known[v].items():
            if w not in state.explored and (best is None or (c, w) < best):
                best = (c, w)
        if best is not None:
            return best[1]
    raise Stuck("DFS exhausted with unexplored vertices left")


def weight_class(cost):
    # power-of-two buckets; zero-cost edges share the lowest bucket
    return cost.bit_length() - 1 if cost > 0 else 0


def hdfs_next(state):
    """DFS restricted to the lowest weight class that makes progress.

    Edges are bucketed into power-of-two weight classes. Among the classes
    with at least one boundary edge, the smallest is tried first: within
    it, the step behaves like dfs_next restricted to edges of that class or
    cheaper. Only when a class yields nothing anywhere does the next larger
    class get a turn. The traversal therefore clings to cheap, MST-like
    edges as long as possible.
    """
    caps = sorted(
        {
            weight_class(c)
            for v in state.explored
            for w, c in state.known[v].items()
            if w not in state.explored
        }
    )
    for cap in caps:
        for v in reversed(state.exploration_order):
            best = None
            for w, c in state.known[v].items():
                if (
                    w not in state.explored
                    and weight_class(c) <= cap
                    and (best is None or (c, w) < best)
                ):
                    best = (c, w)
            if best is not None:
                return best[1]
    raise Stuck("no boundary edge left")


BLOCKING_DELTA = 2


def blocking_next(state):
    """Cheapest boundary edge not blocked by a short nearby boundary edge.

    A boundary edge e = (u, v) with u explored is blocked when another
    boundary edge e' = (u', v') satisfies delta * c(e') <= c(e) and the
    known distance from v to u' is at most c(e); delta is fixed to 2. Ties
    among unblocked edges break by (cost, unexplored endpoint, explored
    endpoint). Should every edge block (possible only through zero-cost
    blocker cycles), the cheapest boundary edge is taken outright.
    """
    boundary = []
    for v in sorted(state.explored):
        for w, c in sorted(state.known[v].items()):
            if w not in state.explored:
                boundary.append((c, w, v))
    if not boundary:
        raise Stuck("no boundary edge left")
    boundary.sort()
    dist_from = {}
    for c, w, v in boundary:
        blocked = False
        for c2, w2, v2 in boundary:
            if (c2, w2, v2) == (c, w, v):
                continue
            if BLOCKING_DELTA * c2 <= c:
                if w not in dist_from:
                    dist_from[w] = shortest_distances(state.known, w)
                if dist_from[w].get(v2, c + 1) <= c:
                    blocked = True
                    break
        if not blocked:
            return w
    return boundary[0][1]


def fp_next(state, order):
    """First vertex of the predicted order that is explorable right now.

    Explorable means unexplored but already labeled in the known subgraph;
    a predicted vertex nobody has seen yet cannot be targeted and is passed
    over until it becomes known. On complete graphs this never happens.
    """
    for v in order:
        if v not in state.explored and v in state.known:
            return v
    raise PredictionIncomplete(f"prediction misses vertices: {state.unexplored()}")


class Explorer:
    """Named wrapper so runs and benchmark rows can identify strategies."""

    name = "explorer"

    def next_target(self, state):
        raise NotImplementedError


class NearestNeighbor(Explorer):
    name = "nn"

    def next_target(self, state):
        return nn_next(state)


class DepthFirst(Explorer):
    name = "dfs"

    def next_target(self, state):
        return dfs_next(state)


class HierarchicalDepthFirst(Explorer):
    name = "hdfs"

    def next_target(self, state):
        return hdfs_next(state)


class Blocking(Explorer):
    name = "blocking"

    def next_target(self, state):
        return blocking_next(state)


class FollowPrediction(Explorer):
    name = "fp"

    def __init__(self, order):
        self.order = list(order)

    def next_target(self, state):
        return fp_next(state, self.order)


def run(explorer, instance):
    """Execute an explorer until everything is explored, then return home.

    Returns (cost, walk, state). The walk is the full edge sequence
    including the final return to the start.
    """
    state = ExplorationState(instance)
    while not state.fully_explored:
        v = explorer.next_target(state)
        if v in state.explored or v not in state.known:
            raise Stuck(f"{explorer.name} named illegal vertex {v}")
        path, _ = shortest_path(state.known, state.position, v)
        state.traverse(path)
    if state.position != state.start:
        path, _ = shortest_path(state.known, state.position, state.start)
        state.traverse(path)
    return state.total_cost, state.walk, state


BY_NAME = {
    "nn": NearestNeighbor,
    "dfs": DepthFirst,
    "hdfs": HierarchicalDepthFirst,
    "blocking": Blocking,
}


def make_explorer(name, prediction_order=None):
    """Explorer factory used by the CLI and the benchmark grid."""
    if name == "fp":
        if prediction_order is None:
            raise GraphError("fp needs a prediction")
        return FollowPrediction(prediction_order)
    if name in BY_NAME:
        return BY_NAME[name]()
    raise GraphError(f"unknown explorer {name!r}")
