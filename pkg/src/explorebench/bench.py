"""Experiment harness: algorithm grids over instances, versioned CSV
records, and bucketed competitive-ratio summaries.

Ratios use the MST cost as denominator so large instances stay feasible;
the exact optimum is recorded alongside whenever Held-Karp can reach it.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .explorers import BY_NAME, FollowPrediction, make_explorer, run
from .graphs import HELD_KARP_LIMIT, GraphError, exact_opt, mst
from .instances import ParseError, load_graph_file, load_tsplib
from .predictions import degrade, perfect_tour
from .robustify import RobustifyConfig, run_scheme

log = logging.getLogger(__name__)

CSV_SCHEMA = "bench-csv-v1"
CSV_COLUMNS = (
    "instance_id", "algorithm", "variant", "lambda", "relative_error",
    "cost", "mst_lb", "opt", "ratio", "seed",
)
AGGREGATE_SCHEMA = "bench-aggregate-v1"
AGGREGATE_COLUMNS = (
    "algorithm", "variant", "lambda", "bucket_lo", "bucket_hi",
    "count", "mean_ratio", "stddev_ratio",
)
VARIANTS = ("plain", "basic", "modified")
ALGORITHM_NAMES = tuple(sorted(BY_NAME)) + ("fp",)


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    algorithm: str
    variant: str
    lam: Fraction
    relative_error: Fraction
    cost: int
    mst_lower_bound: int
    opt: int
    ratio: Fraction
    seed: int


@dataclass(frozen=True)
class AggregateRow:
    algorithm: str
    variant: str
    lam: Fraction
    bucket_lo: Fraction
    bucket_hi: Fraction
    count: int
    mean_ratio: Fraction
    variance: Fraction

    @property
    def stddev(self):
        return math.sqrt(self.variance)


def parse_rational(text):
    """Accept both fraction ("3/4") and decimal ("0.75") spellings."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_algorithm(text):
    """`nn`, `fp`, ... optionally prefixed `basic:` or `modified:`."""
    variant, _, name = text.rpartition(":")
    variant = variant or "plain"
    if variant not in VARIANTS or name not in ALGORITHM_NAMES:
        raise ParseError(f"unknown algorithm spec: {text!r}")
    return variant, name


def load_instance(path):
    p = Path(path)
    inst = load_tsplib(p) if p.suffix.lower() == ".tsp" else load_graph_file(p)
    return p.stem, inst


def _run_cell(instance_id, instance, variant, name, lam, error_target, seed):
    rel = None
    if name == "fp":
        pred = perfect_tour(instance, rng_seed=seed or 0)
        rel = Fraction(0)
        if error_target is not None and error_target > 0:
            worsened = degrade(instance, pred, error_target, rng_seed=seed or 0)
            pred, rel = worsened.prediction, worsened.achieved.relative
        explorer = FollowPrediction(pred.order)
    else:
        explorer = make_explorer(name)
    if variant == "plain":
        cost = run(explorer, instance)[0]
    else:
        cost = run_scheme(explorer, instance, RobustifyConfig(lam, variant))[0]
    g = instance.graph
    mst_lb = mst(g)[1]
    opt = exact_opt(g, instance.start) if g.n <= HELD_KARP_LIMIT else None
    ratio = Fraction(cost, mst_lb) if mst_lb > 0 else None
    return BenchRecord(
        instance_id, name, variant, lam, rel, cost, mst_lb, opt, ratio, seed
    )


def run_grid(instances, algorithms, lambdas, error_targets, seeds, failures=None):
    """One record per cell of the cross product, with inapplicable axes
    collapsed: lambdas bind only robustified entries, error targets and
    seeds only prediction-fed ones. Failing cells are logged (and appended
    to `failures` when a list is passed) and the grid keeps going.
    """
    cells = []
    for instance_id, instance in instances:
        for spec in algorithms:
            variant, name = parse_algorithm(spec)
            lams = [Fraction(l) for l in lambdas] if variant != "plain" else [None]
            errs = [Fraction(e) for e in error_targets] if name == "fp" else [None]
            sds = list(seeds) if name == "fp" else [None]
            for lam in lams:
                for err in errs:
                    for seed in sds:
                        cells.append(
                            (instance_id, instance, variant, name, lam, err, seed)
                        )

    def attempt(cell):
        try:
            return None, _run_cell(*cell)
        except Exception as exc:
            iid, _, variant, name, lam, err, seed = cell
            return (
                f"{iid} {variant}:{name} lambda={lam} error={err} seed={seed}: {exc}",
                None,
            )

    workers = max(1, int(os.environ.get("EXPLOREBENCH_WORKERS", "1")))
    if workers == 1:
        outcomes = [attempt(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(attempt, cells))

    records = []
    for failure, record in outcomes:
        if failure is not None:
            log.warning("grid cell failed: %s", failure)
            if failures is not None:
                failures.append(failure)
        else:
            records.append(record)
    return records


def aggregate(records, bucket_width):
    """Mean and population variance of ratios per (algorithm, variant,
    lambda) series and half-open error bucket [k*w, (k+1)*w); records
    without a relative error land in a single unbucketed row."""
    w = Fraction(bucket_width)
    if w <= 0:
        raise GraphError("bucket width must be positive")
    groups = {}
    for r in records:
        if r.ratio is None:
            continue
        if r.relative_error is None:
            lo = hi = None
        else:
            k = r.relative_error // w
            lo, hi = k * w, (k + 1) * w
        groups.setdefault((r.algorithm, r.variant, r.lam, lo, hi), []).append(r.ratio)

    def order(key):
        alg, variant, lam, lo, _ = key
        return (alg, variant, lam is not None, lam or 0, lo is not None, lo or 0)

    rows = []
    for key in sorted(groups, key=order):
        ratios = groups[key]
        n = len(ratios)
        mean = Fraction(sum(ratios), n)
        variance = sum((x - mean) ** 2 for x in ratios) / n
        rows.append(AggregateRow(*key, n, mean, variance))
    return rows


def _cell(value):
    return "" if value is None else str(value)


def render_csv(records):
    lines = [f"# {CSV_SCHEMA}", ",".join(CSV_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                (
                    r.instance_id, r.algorithm, r.variant,
                    _cell(r.lam), _cell(r.relative_error),
                    str(r.cost), str(r.mst_lower_bound),
                    _cell(r.opt), _cell(r.ratio), _cell(r.seed),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(path, records):
    Path(path).write_text(render_csv(records))


def parse_csv(text):
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"# {CSV_SCHEMA}":
        raise ParseError(f"line 1: expected `# {CSV_SCHEMA}` schema tag")
    if len(lines) < 2 or lines[1].strip() != ",".join(CSV_COLUMNS):
        raise ParseError("line 2: header does not match the v1 schema")
    records = []
    for lineno, line in enumerate(lines[2:], 3):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ParseError(f"line {lineno}: expected {len(CSV_COLUMNS)} fields")
        iid, alg, variant, lam, rel, cost, mst_lb, opt, ratio, seed = parts
        try:
            records.append(
                BenchRecord(
                    iid, alg, variant,
                    Fraction(lam) if lam else None,
                    Fraction(rel) if rel else None,
                    int(cost), int(mst_lb),
                    int(opt) if opt else None,
                    Fraction(ratio) if ratio else None,
                    int(seed) if seed else None,
                )
            )
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: malformed field") from None
    return records


def read_csv(path):
    return parse_csv(Path(path).read_text())


def render_aggregate_csv(rows):
    lines = [f"# {AGGREGATE_SCHEMA}", ",".join(AGGREGATE_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                (
                    r.algorithm, r.variant, _cell(r.lam),
                    _cell(r.bucket_lo), _cell(r.bucket_hi),
                    str(r.count), str(r.mean_ratio), str(r.stddev),
                )
            )
        )
    return "\n".join(lines) + "\n"
