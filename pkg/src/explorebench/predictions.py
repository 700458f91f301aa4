"""Tour and tree predictions: building them, degrading them, measuring error.

A tour prediction is a visiting order given directly; a tree prediction is a
spanning tree whose DFS traversal order (children in ascending index) is what
the follow-prediction explorer actually consumes.
"""

import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .explorers import FollowPrediction, run
from .graphs import (
    HELD_KARP_LIMIT,
    GraphError,
    exact_opt,
    exact_opt_cycle,
    mst,
    shortest_path,
)
from .instances import ParseError


@dataclass(frozen=True)
class TourPrediction:
    order: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))


@dataclass(frozen=True)
class TreePrediction:
    tree: tuple
    derived_order: tuple


@dataclass(frozen=True)
class PredictionError:
    """Absolute cost gap to the reference tour plus its MST-relative form;
    exact_reference is False when the comparison tour is itself heuristic
    (n above the exact-solver limit)."""

    absolute: int
    relative: Fraction
    exact_reference: bool = True


@dataclass(frozen=True)
class DegradeResult:
    prediction: TourPrediction
    achieved: PredictionError
    saturated: bool


def order_of(prediction):
    if isinstance(prediction, TreePrediction):
        return prediction.derived_order
    return prediction.order


def _check_order(instance, order):
    n = instance.graph.n
    if len(order) != n or set(order) != set(range(n)):
        raise GraphError("prediction must visit every vertex exactly once")
    if order[0] != instance.start:
        raise GraphError(f"prediction must start at vertex {instance.start}")


def fp_cost(instance, prediction):
    """Cost of blindly following the prediction, return leg included."""
    order = order_of(prediction)
    _check_order(instance, order)
    cost, _, _ = run(FollowPrediction(order), instance)
    return cost


def tree_dfs_order(edges, start=0):
    """Preorder of a DFS from start, children visited in ascending index."""
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = []
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in sorted(adj[v], reverse=True):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return order


def tree_prediction(edges, start=0):
    """Build a TreePrediction from an edge set, validating tree-ness."""
    pairs = []
    for u, v in edges:
        if u == v:
            raise GraphError(f"self loop at {u} in predicted tree")
        pairs.append((u, v) if u < v else (v, u))
    pairs.sort()
    order = tree_dfs_order(pairs, start)
    vertices = {w for e in pairs for w in e} | {start}
    if len(order) != len(vertices) or len(pairs) != len(vertices) - 1:
        raise GraphError("predicted edge set is not a spanning tree")
    return TreePrediction(tuple(pairs), tuple(order))


def perfect_tree(instance):
    edges, _ = mst(instance.graph)
    return TreePrediction(
        tuple(edges), tuple(tree_dfs_order(edges, instance.start))
    )


def perfect_tour(instance, rng_seed=0):
    """Exact optimal visiting order on small graphs, else MST doubling
    refined by 2-opt on the executed cost."""
    g = instance.graph
    if g.n <= HELD_KARP_LIMIT:
        _, cycle = exact_opt_cycle(g, instance.start)
        walk = []
        for a, b in zip(cycle, cycle[1:]):
            walk.extend(shortest_path(g.adj, a, b)[0][:-1])
        walk.append(instance.start)
        order, seen = [], set()
        for v in walk:
            if v not in seen:
                seen.add(v)
                order.append(v)
        return TourPrediction(tuple(order))
    base = perfect_tree(instance).derived_order
    return TourPrediction(tuple(_two_opt(instance, list(base), random.Random(rng_seed))))


def _reversals(n, rng):
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    return pairs


def _two_opt(instance, order, rng):
    cost = fp_cost(instance, TourPrediction(tuple(order)))
    improved = True
    while improved:
        improved = False
        for i, j in _reversals(len(order), rng):
            cand = order[:i] + order[i : j + 1][::-1] + order[j + 1 :]
            c = fp_cost(instance, TourPrediction(tuple(cand)))
            if c < cost:
                order, cost = cand, c
                improved = True
                break
    return order


def _tour_reference(instance):
    g = instance.graph
    if g.n <= HELD_KARP_LIMIT:
        return exact_opt(g, instance.start), True
    return fp_cost(instance, perfect_tour(instance)), False


def error_of(instance, prediction):
    """Absolute prediction error and its ratio to the MST cost.

    Tree predictions compare against the MST's derived order, so a hand-built
    tree that happens to execute cheaper yields a negative error; everything
    this package generates stays >= 0.
    """
    denom = mst(instance.graph)[1]
    cost = fp_cost(instance, prediction)
    if isinstance(prediction, TreePrediction):
        ref = fp_cost(instance, perfect_tree(instance))
        return PredictionError(cost - ref, Fraction(cost - ref, denom))
    ref, exact = _tour_reference(instance)
    if not exact:
        ref = min(ref, cost)
    return PredictionError(cost - ref, Fraction(cost - ref, denom), exact)


def degrade(instance, prediction, target_relative_error, rng_seed):
    """Worsen a tour by strictly cost-increasing reversals until the relative
    error reaches the target, or no reversal helps (saturated)."""
    denom = mst(instance.graph)[1]
    order = list(order_of(prediction))
    cost = fp_cost(instance, TourPrediction(tuple(order)))
    ref, exact = _tour_reference(instance)
    if not exact:
        ref = min(ref, cost)
    target = Fraction(target_relative_error)
    if target < Fraction(cost - ref, denom):
        raise ValueError("target below the prediction's current error")
    rng = random.Random(rng_seed)
    saturated = False
    while Fraction(cost - ref, denom) < target:
        for i, j in _reversals(len(order), rng):
            cand = order[:i] + order[i : j + 1][::-1] + order[j + 1 :]
            c = fp_cost(instance, TourPrediction(tuple(cand)))
            if c > cost:
                order, cost = cand, c
                break
        else:
            saturated = True
            break
    achieved = PredictionError(cost - ref, Fraction(cost - ref, denom), exact)
    return DegradeResult(TourPrediction(tuple(order)), achieved, saturated)


def save_prediction(path, prediction):
    with open(path, "w") as fh:
        if isinstance(prediction, TreePrediction):
            fh.write("TREE\n")
            for u, v in prediction.tree:
                fh.write(f"{u} {v}\n")
        else:
            for v in prediction.order:
                fh.write(f"{v}\n")


def load_prediction(path, start=0):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParseError(f"{path}: empty prediction file")
    if lines[0] == "TREE":
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParseError(f"{path}: expected `u v` per tree edge line")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError(f"{path}: expected `u v` per tree edge line") from None
        return tree_prediction(edges, start)
    try:
        order = [int(ln) for ln in lines]
    except ValueError:
        raise ParseError(f"{path}: vertex labels must be integers") from None
    return TourPrediction(tuple(order))
