"""Command line front end for single runs, grids, generators, learning,
and aggregation."""

import argparse
import sys
from pathlib import Path

from . import bench
from .explorers import FollowPrediction, make_explorer, run
from .graphs import GraphError
from .instances import RosenkrantzParams, gen_rosenkrantz, save_graph_file
from .learning import erm_tour, erm_tree, load_training_set
from .predictions import (
    degrade,
    load_prediction,
    order_of,
    perfect_tour,
    perfect_tree,
    save_prediction,
)
from .robustify import RobustifyConfig, run_scheme


class UsageError(Exception):
    pass


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_run(args):
    _, instance = bench.load_instance(args.instance)
    if args.alg == "fp":
        if not args.prediction:
            raise UsageError("--alg fp requires --prediction")
        pred = load_prediction(args.prediction, start=instance.start)
        explorer = FollowPrediction(order_of(pred))
    else:
        explorer = make_explorer(args.alg)
    if args.robustify:
        config = RobustifyConfig(bench.parse_rational(args.lam), args.robustify)
        cost, _ = run_scheme(explorer, instance, config)
    else:
        cost = run(explorer, instance)[0]
    print(cost)
    return 0


def _rosenkrantz_spec(text):
    parts = text.split(":")
    if len(parts) not in (1, 2):
        raise UsageError(f"expected I or I:SCALE, got {text!r}")
    try:
        i = int(parts[0])
        scale = int(parts[1]) if len(parts) == 2 else 1
    except ValueError:
        raise UsageError(f"expected I or I:SCALE, got {text!r}") from None
    suffix = f"-s{scale}" if scale != 1 else ""
    return f"rosenkrantz-i{i}{suffix}", gen_rosenkrantz(RosenkrantzParams(i, scale))


def _split(text):
    return [part for part in text.split(",") if part]


def cmd_grid(args):
    instances = [bench.load_instance(p) for p in args.instance]
    instances.extend(_rosenkrantz_spec(s) for s in args.rosenkrantz)
    if not instances:
        raise UsageError("no instances given")
    records = bench.run_grid(
        instances,
        _split(args.algs),
        [bench.parse_rational(x) for x in _split(args.lambdas)],
        [bench.parse_rational(x) for x in _split(args.errors)],
        [int(x) for x in _split(args.seeds)],
    )
    _emit(bench.render_csv(records), args.out)
    return 0


def cmd_gen_rosenkrantz(args):
    instance = gen_rosenkrantz(RosenkrantzParams(args.i, args.scale))
    save_graph_file(args.out, instance.graph)
    return 0


def cmd_gen_prediction(args):
    _, instance = bench.load_instance(args.instance)
    if args.kind == "tree":
        if bench.parse_rational(args.error) != 0:
            raise UsageError("tree predictions are emitted exact; --error only applies to tours")
        pred = perfect_tree(instance)
    else:
        pred = perfect_tour(instance, rng_seed=args.seed)
        target = bench.parse_rational(args.error)
        if target > 0:
            pred = degrade(instance, pred, target, rng_seed=args.seed).prediction
    save_prediction(args.out, pred)
    return 0


def cmd_learn(args):
    training = load_training_set(args.training)
    learner = erm_tree if args.kind == "tree" else erm_tour
    save_prediction(args.out, learner(training.n, training))
    return 0


def cmd_aggregate(args):
    records = bench.read_csv(args.csv)
    rows = bench.aggregate(records, bench.parse_rational(args.bucket_width))
    _emit(bench.render_aggregate_csv(rows), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="explorebench",
        description="Explore unknown weighted graphs online, with or without predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="explore one instance, print the walk cost")
    p.add_argument("--instance", required=True, help="edge-list file or .tsp")
    p.add_argument("--alg", required=True, choices=list(bench.ALGORITHM_NAMES))
    p.add_argument("--prediction", help="prediction file (required for fp)")
    p.add_argument("--robustify", choices=["basic", "modified"])
    p.add_argument("--lambda", dest="lam", default="1", help="rational, e.g. 1/2")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("grid", help="run an algorithm grid, emit records CSV")
    p.add_argument("--instance", action="append", default=[], help="repeatable")
    p.add_argument(
        "--rosenkrantz", action="append", default=[], metavar="I[:SCALE]",
        help="generated lower-bound instance, repeatable",
    )
    p.add_argument(
        "--algs", required=True,
        help="comma list; robustified entries as basic:NAME or modified:NAME",
    )
    p.add_argument("--lambdas", default="1", help="comma list of rationals")
    p.add_argument("--errors", default="0", help="comma list of target errors")
    p.add_argument("--seeds", default="0", help="comma list of integers")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("gen-rosenkrantz", help="write a lower-bound instance")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_rosenkrantz)

    p = sub.add_parser("gen-prediction", help="write a tour or tree prediction")
    p.add_argument("--instance", required=True)
    p.add_argument("--kind", choices=["tour", "tree"], default="tour")
    p.add_argument("--error", default="0", help="target relative error (tours)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_prediction)

    p = sub.add_parser("learn", help="fit a prediction to a training set")
    p.add_argument("--training", required=True)
    p.add_argument("--kind", choices=["tree", "tour"], default="tree")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("aggregate", help="bucketed means over a records CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--bucket-width", default="5")
    p.add_argument("--out", help="summary path (default stdout)")
    p.set_defaults(func=cmd_aggregate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        name = exc.filename if exc.filename else exc
        print(f"error: no such file: {name}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
