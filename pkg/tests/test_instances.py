import random
from fractions import Fraction

import pytest

from explorebench.explorers import NearestNeighbor, run
from explorebench.graphs import Disconnected, mst
from explorebench.instances import (
    ParseError,
    RosenkrantzParams,
    UnsupportedFormat,
    gen_random,
    gen_rosenkrantz,
    load_graph_file,
    load_tsplib,
    save_graph_file,
)
from test_graphs import random_connected_graph


# ---- edge-list files ----------------------------------------------------------


def test_load_two_vertex_file(tmp_path):
    f = tmp_path / "two.graph"
    f.write_text("2 1\n0 1 5\n")
    inst = load_graph_file(f)
    assert inst.graph.n == 2
    assert inst.graph.cost(0, 1) == 5
    assert inst.start == 0


def test_edge_list_roundtrip(tmp_path):
    rng = random.Random(7)
    for _ in range(10):
        g = random_connected_graph(rng, rng.randint(2, 12), rng.randint(0, 10), 50)
        f = tmp_path / "round.graph"
        save_graph_file(f, g)
        assert load_graph_file(f).graph == g


def test_load_rejects_self_loop(tmp_path):
    f = tmp_path / "loop.graph"
    f.write_text("2 1\n0 0 3\n")
    with pytest.raises(ParseError):
        load_graph_file(f)


def test_load_reports_disconnected(tmp_path):
    f = tmp_path / "disc.graph"
    f.write_text("4 2\n0 1 1\n2 3 1\n")
    with pytest.raises(Disconnected):
        load_graph_file(f)


def test_load_rejects_bad_header(tmp_path):
    f = tmp_path / "bad.graph"
    f.write_text("2 1 9\n0 1 5\n")
    with pytest.raises(ParseError, match="line 1"):
        load_graph_file(f)


def test_load_rejects_bad_edge_line(tmp_path):
    f = tmp_path / "bad.graph"
    f.write_text("2 1\n0 one 5\n")
    with pytest.raises(ParseError, match="line 2"):
        load_graph_file(f)


def test_load_rejects_edge_count_mismatch(tmp_path):
    f = tmp_path / "short.graph"
    f.write_text("3 2\n0 1 1\n")
    with pytest.raises(ParseError):
        load_graph_file(f)


# ---- TSPLIB ---------------------------------------------------------------------


def tsplib_text(body):
    return "NAME: t\nTYPE: TSP\n" + body + "EOF\n"


def test_tsplib_colinear_points(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 0 0\n2 0 1\n3 0 2\n"
        )
    )
    g = load_tsplib(f).graph
    assert (g.cost(0, 1), g.cost(1, 2), g.cost(0, 2)) == (1, 1, 2)


def test_tsplib_rounds_to_nearest_integer(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 0 0\n2 1 1\n"
        )
    )
    assert load_tsplib(f).graph.cost(0, 1) == 1  # sqrt(2) rounds down


def test_tsplib_euc2d_symmetry(tmp_path):
    f = tmp_path / "t.tsp"
    rng = random.Random(3)
    n = 9
    coords = "".join(
        f"{k + 1} {rng.uniform(0, 100):.4f} {rng.uniform(0, 100):.4f}\n"
        for k in range(n)
    )
    f.write_text(
        tsplib_text(
            f"DIMENSION: {n}\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n{coords}"
        )
    )
    g = load_tsplib(f).graph
    assert g.n == n
    assert g.m == n * (n - 1) // 2
    for u in range(n):
        for v in range(u + 1, n):
            assert g.cost(u, v) == g.cost(v, u)


def test_tsplib_explicit_full_matrix(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
            "EDGE_WEIGHT_SECTION\n0 7\n7 0\n"
        )
    )
    g = load_tsplib(f).graph
    assert g.n == 2
    assert g.cost(0, 1) == 7


@pytest.mark.parametrize(
    "fmt,section",
    [
        ("UPPER_ROW", "1 2\n3\n"),
        ("LOWER_ROW", "1\n2 3\n"),
        ("UPPER_DIAG_ROW", "0 1 2\n0 3\n0\n"),
        ("LOWER_DIAG_ROW", "0\n1 0\n2 3 0\n"),
    ],
)
def test_tsplib_explicit_layouts_agree(tmp_path, fmt, section):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            f"EDGE_WEIGHT_FORMAT: {fmt}\n"
            f"EDGE_WEIGHT_SECTION\n{section}"
        )
    )
    g = load_tsplib(f).graph
    assert (g.cost(0, 1), g.cost(0, 2), g.cost(1, 2)) == (1, 2, 3)


def test_tsplib_rejects_asymmetric_matrix(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
            "EDGE_WEIGHT_SECTION\n0 7\n8 0\n"
        )
    )
    with pytest.raises(ParseError):
        load_tsplib(f)


def test_tsplib_rejects_geo(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 2\nEDGE_WEIGHT_TYPE: GEO\n"
            "NODE_COORD_SECTION\n1 0 0\n2 1 1\n"
        )
    )
    with pytest.raises(UnsupportedFormat):
        load_tsplib(f)


def test_tsplib_missing_dimension(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(tsplib_text("EDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n"))
    with pytest.raises(ParseError):
        load_tsplib(f)


def test_tsplib_bad_coord_line(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n"
            "NODE_COORD_SECTION\n1 0 0\n2 nine 1\n"
        )
    )
    with pytest.raises(ParseError, match="line 7"):
        load_tsplib(f)


def test_tsplib_wrong_entry_count(tmp_path):
    f = tmp_path / "t.tsp"
    f.write_text(
        tsplib_text(
            "DIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT: UPPER_ROW\n"
            "EDGE_WEIGHT_SECTION\n1 2\n"
        )
    )
    with pytest.raises(ParseError):
        load_tsplib(f)


# ---- Rosenkrantz family -----------------------------------------------------------


def forced_nn_cost(i, s):
    """Closed form for the forced NN walk: crawl, one sweep per level, return."""
    m = 2 ** i
    total = m * s
    total += 2 * s + 1
    total += (m // 2 - 1) * (4 * s + 2)
    for level in range(2, i + 1):
        total += 2 ** level * s + 2 * level - 1
        total += (m // 2 ** level - 1) * (2 ** (level + 1) * s + 2 * level)
    total += m * s + i
    return total


def family_tree_cost(i, s):
    m = 2 ** i
    return m * s + sum(
        (m // 2 ** level) * (2 ** (level - 1) * s + level)
        for level in range(1, i + 1)
    )


@pytest.mark.parametrize("i", [1, 2, 3, 4])
@pytest.mark.parametrize("scale", [1, 5])
def test_rosenkrantz_nn_matches_closed_form(i, scale):
    inst = gen_rosenkrantz(RosenkrantzParams(i, scale))
    assert inst.graph.n == 2 ** (i + 1)
    cost, _, _ = run(NearestNeighbor(), inst)
    assert cost == forced_nn_cost(i, scale)
    assert mst(inst.graph)[1] == family_tree_cost(i, scale)


def test_rosenkrantz_smallest_member():
    inst = gen_rosenkrantz(RosenkrantzParams(1))
    cost, _, _ = run(NearestNeighbor(), inst)
    assert Fraction(cost, mst(inst.graph)[1]) >= 1


def test_rosenkrantz_ratio_grows():
    def ratio(i):
        inst = gen_rosenkrantz(RosenkrantzParams(i, 4))
        cost, _, _ = run(NearestNeighbor(), inst)
        return Fraction(cost, mst(inst.graph)[1])

    ratios = [ratio(i) for i in range(3, 9)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratio(6) > ratio(3)


def test_rosenkrantz_size_doubles():
    sizes = [gen_rosenkrantz(RosenkrantzParams(i)).graph.n for i in range(3, 9)]
    assert all(b == 2 * a for a, b in zip(sizes, sizes[1:]))


def test_rosenkrantz_rejects_bad_params():
    with pytest.raises(ValueError):
        RosenkrantzParams(0)
    with pytest.raises(ValueError):
        RosenkrantzParams(3, 0)


# ---- random generator ---------------------------------------------------------------


def test_gen_random_single_vertex():
    inst = gen_random(1, 0.5, 10, seed=0)
    assert inst.graph.n == 1
    assert inst.graph.m == 0


def test_gen_random_deterministic():
    assert gen_random(12, 0.3, 25, seed=42).graph == gen_random(12, 0.3, 25, seed=42).graph


def test_gen_random_complete_at_full_density():
    assert gen_random(10, 1.0, 10, seed=1).graph.m == 45


def test_gen_random_tree_at_zero_density():
    g = gen_random(9, 0.0, 10, seed=5).graph
    assert g.m == 8


def test_gen_random_cost_range():
    g = gen_random(15, 0.5, 7, seed=9).graph
    assert all(1 <= c <= 7 for _, _, c in g.edges())


def test_gen_random_rejects_bad_args():
    with pytest.raises(ValueError):
        gen_random(0, 0.5, 10, seed=0)
    with pytest.raises(ValueError):
        gen_random(5, 1.5, 10, seed=0)
    with pytest.raises(ValueError):
        gen_random(5, 0.5, 0, seed=0)
