import json
from fractions import Fraction
from pathlib import Path

import pytest

from explorefigs import EmptyData, PlotSpec, SchemaMismatch, plot_error_curves, plot_size_curves

FIXTURES = Path(__file__).parent / "fixtures"

AGG_HEADER = (
    "# bench-aggregate-v1\n"
    "algorithm,variant,lambda,bucket_lo,bucket_hi,count,mean_ratio,stddev_ratio\n"
)
REC_HEADER = (
    "# bench-csv-v1\n"
    "instance_id,algorithm,variant,lambda,relative_error,cost,mst_lb,opt,ratio,seed\n"
)


def agg_csv(tmp_path, rows):
    path = tmp_path / "agg.csv"
    path.write_text(AGG_HEADER + "".join(r + "\n" for r in rows))
    return path


def rec_csv(tmp_path, rows):
    path = tmp_path / "rec.csv"
    path.write_text(REC_HEADER + "".join(r + "\n" for r in rows))
    return path


def sidecar(spec):
    return json.loads(spec.sidecar_path.read_text())


def test_size_sidecar_matches_golden(tmp_path):
    spec = PlotSpec(
        str(FIXTURES / "rosenkrantz.csv"), "size_param", str(tmp_path / "sizes.png")
    )
    plot_size_curves(spec)
    golden = (FIXTURES / "sizes_golden.json").read_bytes()
    assert spec.sidecar_path.read_bytes() == golden
    print("PASS plot regression: sidecar byte-identical to golden")


def test_paired_zoom_layout_many_series(tmp_path):
    rows = []
    lams = ("1/4", "1/2", "1", "2", "4")
    for variant in ("basic", "modified"):
        for s, lam in enumerate(lams):
            for k in range(30):
                lo, hi = Fraction(k, 10), Fraction(k + 1, 10)
                mean = Fraction(1) + Fraction(k, 40) + Fraction(s, 100)
                rows.append(f"fp,{variant},{lam},{lo},{hi},5,{mean},0.0")
    rows.append("nn,plain,,,,150,13/8,0.25")
    rows.append("dfs,plain,,,,150,7/4,0.125")
    out = tmp_path / "cities.png"
    spec = PlotSpec(
        str(agg_csv(tmp_path, rows)), "relative_error", str(out),
        zoom=(Fraction(0), Fraction(1)),
    )
    plot_error_curves(spec)
    data = sidecar(spec)
    assert len(data["series"]) == 10
    assert all(len(s["points"]) == 30 for s in data["series"])
    assert len(data["reference_lines"]) == 2
    assert out.stat().st_size > 0
    print("PASS plot regression: paired full/zoom render, 10 series x 30 buckets")


def test_error_curves_single_series(tmp_path):
    rows = [
        "fp,plain,,0,1/2,4,1,0.0",
        "fp,plain,,1/2,1,4,3/2,0.0",
        "fp,plain,,1,3/2,4,2,0.0",
    ]
    spec = PlotSpec(
        str(agg_csv(tmp_path, rows)), "relative_error", str(tmp_path / "o.png")
    )
    plot_error_curves(spec)
    data = sidecar(spec)
    assert len(data["series"]) == 1
    line = data["series"][0]
    assert line["algorithm"] == "fp" and line["lambda"] is None
    assert [p[0] for p in line["points"]] == ["1/4", "3/4", "5/4"]
    assert [p[1] for p in line["points"]] == ["1", "3/2", "2"]


def test_classical_rows_become_reference_lines(tmp_path):
    rows = [
        "fp,plain,,0,1,10,3/2,0.5",
        "nn,plain,,,,10,9/5,0.25",
    ]
    spec = PlotSpec(
        str(agg_csv(tmp_path, rows)), "relative_error", str(tmp_path / "o.png")
    )
    plot_error_curves(spec)
    data = sidecar(spec)
    assert data["reference_lines"] == [
        {"algorithm": "nn", "variant": "plain", "lambda": None, "value": "9/5"}
    ]


def test_wrong_schema_tag(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("# bench-aggregate-v2\nalgorithm\n")
    with pytest.raises(SchemaMismatch):
        plot_error_curves(PlotSpec(str(path), "relative_error", str(tmp_path / "o.png")))


def test_wrong_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("# bench-aggregate-v1\nalgorithm,variant\n")
    with pytest.raises(SchemaMismatch):
        plot_error_curves(PlotSpec(str(path), "relative_error", str(tmp_path / "o.png")))


def test_row_field_count(tmp_path):
    path = agg_csv(tmp_path, ["fp,plain,0"])
    with pytest.raises(SchemaMismatch):
        plot_error_curves(PlotSpec(str(path), "relative_error", str(tmp_path / "o.png")))


def test_records_csv_rejected_for_error_curves(tmp_path):
    spec = PlotSpec(
        str(FIXTURES / "rosenkrantz.csv"), "relative_error", str(tmp_path / "o.png")
    )
    with pytest.raises(SchemaMismatch):
        plot_error_curves(spec)


def test_empty_csv_raises_before_writing(tmp_path):
    out = tmp_path / "o.png"
    spec = PlotSpec(str(agg_csv(tmp_path, [])), "relative_error", str(out))
    with pytest.raises(EmptyData):
        plot_error_curves(spec)
    assert not out.exists()
    assert not spec.sidecar_path.exists()


def test_rerender_is_deterministic(tmp_path):
    specs = [
        PlotSpec(
            str(FIXTURES / "rosenkrantz.csv"), "size_param", str(tmp_path / f"{i}.png")
        )
        for i in range(2)
    ]
    for spec in specs:
        plot_size_curves(spec)
    assert specs[0].sidecar_path.read_bytes() == specs[1].sidecar_path.read_bytes()


def test_size_curves_multi_lambda_overlay(tmp_path):
    spec = PlotSpec(
        str(FIXTURES / "rosenkrantz.csv"), "size_param", str(tmp_path / "o.png")
    )
    plot_size_curves(spec)
    keys = [(s["algorithm"], s["variant"], s["lambda"]) for s in sidecar(spec)["series"]]
    assert keys == [
        ("hdfs", "modified", "1"),
        ("hdfs", "modified", "4"),
        ("hdfs", "plain", None),
        ("nn", "plain", None),
    ]


def test_series_filter(tmp_path):
    spec = PlotSpec(
        str(FIXTURES / "rosenkrantz.csv"), "size_param", str(tmp_path / "o.png"),
        series=("nn", "modified:hdfs"),
    )
    plot_size_curves(spec)
    keys = {(s["algorithm"], s["variant"]) for s in sidecar(spec)["series"]}
    assert keys == {("nn", "plain"), ("hdfs", "modified")}


def test_size_curves_average_over_seeds(tmp_path):
    rows = [
        "euc20,nn,plain,,,40,20,,2,",
        "rosenkrantz-i3,nn,plain,,,72,33,,24/11,0",
        "rosenkrantz-i3,nn,plain,,,66,33,,2,1",
        "rosenkrantz-i4,nn,plain,,,5,0,,,0",
    ]
    spec = PlotSpec(str(rec_csv(tmp_path, rows)), "size_param", str(tmp_path / "o.png"))
    plot_size_curves(spec)
    data = sidecar(spec)
    assert len(data["series"]) == 1
    assert data["series"][0]["points"] == [["3", "23/11", ""]]


def test_size_curves_need_size_family_rows(tmp_path):
    rows = ["euc20,nn,plain,,,40,20,,2,"]
    spec = PlotSpec(str(rec_csv(tmp_path, rows)), "size_param", str(tmp_path / "o.png"))
    with pytest.raises(EmptyData):
        plot_size_curves(spec)


def test_unknown_x_axis(tmp_path):
    with pytest.raises(SchemaMismatch):
        PlotSpec("x.csv", "bogus", str(tmp_path / "o.png"))
