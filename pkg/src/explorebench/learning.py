"""ERM learners over i.i.d. cost samples of a fixed complete graph.

Tree hypotheses reduce to one MST computation under summed sample costs;
tour hypotheses are found by exhaustive search, so they stay desk-scale.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .graphs import Graph, GraphError, Instance, TooLarge, exact_opt, mst
from .instances import ParseError
from .predictions import TourPrediction, TreePrediction, fp_cost, tree_prediction

TOUR_SEARCH_LIMIT = 10


class EmptyTrainingSet(GraphError):
    pass


def edge_order(n):
    """The fixed lexicographic edge order all sample vectors index."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


@dataclass(frozen=True)
class TrainingSet:
    n: int
    samples: tuple

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(tuple(s) for s in self.samples))
        k = self.n * (self.n - 1) // 2
        for s in self.samples:
            if len(s) != k:
                raise GraphError(f"expected {k} costs per sample, got {len(s)}")
            if any(c < 0 for c in s):
                raise GraphError("sample costs must be nonnegative")

    @property
    def m(self):
        return len(self.samples)

    def instance(self, i):
        edges = [
            (u, v, c) for (u, v), c in zip(edge_order(self.n), self.samples[i])
        ]
        return Instance(Graph(self.n, edges))


@dataclass(frozen=True)
class ErmConfig:
    epsilon: Fraction
    delta: Fraction
    eta_max: int

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise GraphError("epsilon must lie in (0,1)")
        if not 0 < self.delta < 1:
            raise GraphError("delta must lie in (0,1)")
        if self.eta_max < 1:
            raise GraphError("eta_max must be a positive integer")


def sample_size(n, config):
    """Samples needed for the tree-hypothesis generalization bound,
    m = ceil(2 ln(2|H|/delta) eta_max^2 / eps^2) with |H| = n^(n-2) trees."""
    log_h = (n - 2) * math.log(n) if n > 1 else 0.0
    inner = math.log(2 / config.delta) + log_h
    return math.ceil(2 * inner * config.eta_max**2 / config.epsilon**2)


def _require_samples(training):
    if training.m == 0:
        raise EmptyTrainingSet("training set has no samples")


def erm_tree(n, training):
    """Tree minimizing empirical error: MST under per-edge summed costs."""
    _require_samples(training)
    if n != training.n:
        raise GraphError(f"training set is over {training.n} vertices, not {n}")
    summed = [sum(costs) for costs in zip(*training.samples)]
    g = Graph(n, [(u, v, c) for (u, v), c in zip(edge_order(n), summed)])
    edges, _ = mst(g)
    return tree_prediction(edges)


def erm_tour(n, training):
    """Tour minimizing summed execution cost, by exhaustive search."""
    _require_samples(training)
    if n != training.n:
        raise GraphError(f"training set is over {training.n} vertices, not {n}")
    if n > TOUR_SEARCH_LIMIT:
        raise TooLarge(f"tour search limited to n <= {TOUR_SEARCH_LIMIT}, got {n}")
    insts = [training.instance(i) for i in range(training.m)]
    best = None
    for tail in permutations(range(1, n)):
        order = (0,) + tail
        total = sum(fp_cost(inst, TourPrediction(order)) for inst in insts)
        if best is None or (total, order) < best:
            best = (total, order)
    return TourPrediction(best[1])


@lru_cache(maxsize=None)
def _tree_reference(training, i):
    return mst(training.instance(i).graph)[1]


@lru_cache(maxsize=None)
def _tour_reference(training, i):
    return exact_opt(training.instance(i).graph)


def tree_weight(graph, tree_edges):
    return sum(graph.cost(u, v) for u, v in tree_edges)


def empirical_error(training, prediction):
    """Mean per-sample error against each sample's own optimum."""
    _require_samples(training)
    is_tree = isinstance(prediction, TreePrediction)
    covered = prediction.derived_order if is_tree else prediction.order
    if len(covered) != training.n:
        raise GraphError("prediction does not cover the training vertex set")
    total = 0
    for i in range(training.m):
        inst = training.instance(i)
        if is_tree:
            total += tree_weight(inst.graph, prediction.tree) - _tree_reference(training, i)
        else:
            total += fp_cost(inst, prediction) - _tour_reference(training, i)
    return Fraction(total, training.m)


def gen_training(n, m, max_cost, seed):
    """Product distribution: independent uniform integer costs per edge."""
    if n < 1 or m < 0 or max_cost < 1:
        raise ValueError("need n >= 1, m >= 0, max_cost >= 1")
    rng = random.Random(seed)
    k = n * (n - 1) // 2
    return TrainingSet(
        n, tuple(tuple(rng.randint(1, max_cost) for _ in range(k)) for _ in range(m))
    )


def save_training_set(path, training):
    with open(path, "w") as fh:
        fh.write(f"{training.n} {training.m}\n")
        for s in training.samples:
            fh.write(" ".join(str(c) for c in s) + "\n")


def load_training_set(path):
    """Header `n m`, then m rows of n(n-1)/2 integers in lexicographic
    edge order."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    rows = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise ParseError(f"{path}: empty training file")
    lineno, header = rows[0]
    if len(header) != 2:
        raise ParseError(f"{path} line {lineno}: expected header `n m`")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"{path} line {lineno}: expected header `n m`") from None
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"{path}: header promises {m} samples, found {len(body)}")
    samples = []
    for lineno, parts in body:
        try:
            samples.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ParseError(f"{path} line {lineno}: costs must be integers") from None
    try:
        return TrainingSet(n, tuple(samples))
    except GraphError as exc:
        raise ParseError(f"{path}: {exc}") from None
