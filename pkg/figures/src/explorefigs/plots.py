"""Turn bench CSVs into ratio curves.

Reads only the versioned CSV formats; nothing is recomputed. Every figure
gets a sidecar JSON holding the exact plotted values (as strings), which
is byte-stable across reruns even when the raster is not.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

RECORDS_SCHEMA = "bench-csv-v1"
RECORDS_COLUMNS = (
    "instance_id", "algorithm", "variant", "lambda", "relative_error",
    "cost", "mst_lb", "opt", "ratio", "seed",
)
AGGREGATE_SCHEMA = "bench-aggregate-v1"
AGGREGATE_COLUMNS = (
    "algorithm", "variant", "lambda", "bucket_lo", "bucket_hi",
    "count", "mean_ratio", "stddev_ratio",
)
SIZE_ID = re.compile(r"^rosenkrantz-i(\d+)")


class SchemaMismatch(Exception):
    pass


class EmptyData(Exception):
    pass


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    x_axis: str
    output_path: str
    series: tuple = None
    zoom: tuple = None

    def __post_init__(self):
        if self.x_axis not in ("relative_error", "size_param"):
            raise SchemaMismatch(f"unknown x axis {self.x_axis!r}")

    @property
    def sidecar_path(self):
        return Path(self.output_path).with_suffix(".json")


def _read_rows(path, schema, columns):
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != f"# {schema}":
        raise SchemaMismatch(f"{path}: expected `# {schema}` tag")
    if len(lines) < 2 or lines[1].strip() != ",".join(columns):
        raise SchemaMismatch(f"{path}: header does not match {schema}")
    rows = []
    for line in lines[2:]:
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(columns):
            raise SchemaMismatch(f"{path}: row with {len(parts)} fields")
        rows.append(dict(zip(columns, parts)))
    return rows


def _series_label(key):
    algorithm, variant, lam = key
    label = algorithm if variant == "plain" else f"{variant}:{algorithm}"
    return f"{label} lam={lam}" if lam else label


def _series_sort(key):
    algorithm, variant, lam = key
    return (algorithm, variant, Fraction(lam) if lam else Fraction(-1))


def _keep(key, wanted):
    if wanted is None:
        return True
    algorithm, variant, _ = key
    label = algorithm if variant == "plain" else f"{variant}:{algorithm}"
    return label in wanted


def _write_sidecar(spec, series, reference_lines):
    payload = {
        "schema": "explorefigs-sidecar-v1",
        "x_axis": spec.x_axis,
        "series": [
            {
                "algorithm": key[0],
                "variant": key[1],
                "lambda": key[2] or None,
                "points": points,
            }
            for key, points in series
        ],
        "reference_lines": [
            {
                "algorithm": key[0],
                "variant": key[1],
                "lambda": key[2] or None,
                "value": value,
            }
            for key, value in reference_lines
        ],
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    spec.sidecar_path.write_text(text)


def _render(spec, series, reference_lines, xlabel):
    if spec.zoom is not None:
        fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
        titles = ("full range", "zoom")
    else:
        fig, ax = plt.subplots(figsize=(6.5, 4.5))
        axes = (ax,)
        titles = (None,)
    for ax, title in zip(axes, titles):
        for key, points in series:
            xs = [float(Fraction(p[0])) for p in points]
            ys = [float(Fraction(p[1])) for p in points]
            ax.plot(xs, ys, marker="o", markersize=3, label=_series_label(key))
        for key, value in reference_lines:
            ax.axhline(
                float(Fraction(value)), linestyle="--", linewidth=1,
                label=_series_label(key),
            )
        ax.set_xlabel(xlabel)
        ax.set_ylabel("cost / MST lower bound")
        ax.grid(True, alpha=0.3)
        if title:
            ax.set_title(title)
    if spec.zoom is not None:
        lo, hi = spec.zoom
        zoom_ax = axes[1]
        zoom_ax.set_xlim(float(lo), float(hi))
        ys = [
            float(Fraction(p[1]))
            for _, points in series
            for p in points
            if lo <= Fraction(p[0]) <= hi
        ]
        if ys:
            pad = (max(ys) - min(ys)) * 0.1 or max(ys) * 0.05 or 0.1
            zoom_ax.set_ylim(min(ys) - pad, max(ys) + pad)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    _write_sidecar(spec, series, reference_lines)
    return Path(spec.output_path)


def plot_error_curves(spec):
    """Ratio vs relative-error buckets from an aggregate CSV; rows without
    a bucket (error-independent algorithms) become horizontal reference
    lines."""
    rows = _read_rows(spec.csv_path, AGGREGATE_SCHEMA, AGGREGATE_COLUMNS)
    curves = {}
    references = []
    for row in rows:
        key = (row["algorithm"], row["variant"], row["lambda"])
        if not _keep(key, spec.series):
            continue
        if row["bucket_lo"] == "":
            references.append((key, row["mean_ratio"]))
            continue
        mid = (Fraction(row["bucket_lo"]) + Fraction(row["bucket_hi"])) / 2
        curves.setdefault(key, []).append(
            (mid, [str(mid), row["mean_ratio"], row["stddev_ratio"]])
        )
    if not curves and not references:
        raise EmptyData(f"{spec.csv_path}: no rows to plot")
    series = [
        (key, [p for _, p in sorted(pts)])
        for key, pts in sorted(curves.items(), key=lambda kv: _series_sort(kv[0]))
    ]
    references.sort(key=lambda kv: _series_sort(kv[0]))
    return _render(spec, series, references, "relative error")


def plot_size_curves(spec):
    """Ratio vs the size parameter parsed from rosenkrantz-i<N> instance
    ids, from a records CSV; other instances are ignored."""
    rows = _read_rows(spec.csv_path, RECORDS_SCHEMA, RECORDS_COLUMNS)
    buckets = {}
    for row in rows:
        match = SIZE_ID.match(row["instance_id"])
        if not match or row["ratio"] == "":
            continue
        key = (row["algorithm"], row["variant"], row["lambda"])
        if not _keep(key, spec.series):
            continue
        i = int(match.group(1))
        buckets.setdefault(key, {}).setdefault(i, []).append(Fraction(row["ratio"]))
    if not buckets:
        raise EmptyData(f"{spec.csv_path}: no size-family rows to plot")
    series = []
    for key in sorted(buckets, key=_series_sort):
        points = []
        for i in sorted(buckets[key]):
            ratios = buckets[key][i]
            mean = Fraction(sum(ratios), len(ratios))
            points.append([str(i), str(mean), ""])
        series.append((key, points))
    return _render(spec, series, [], "size parameter i")
