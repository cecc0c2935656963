import numpy as np
import pytest

from mdgcodes import (
    FormatError,
    MDGraph,
    build_mdg,
    format_dimacs,
    parse_dimacs,
    read_dimacs,
    shuffle_graph,
    write_dimacs,
)
from mdgcodes.words import Code, hamming_distance


class TestMDGraph:
    def test_constructor_rejects_bad_edges(self):
        with pytest.raises(ValueError):
            MDGraph(3, [(0, 0)])
        with pytest.raises(ValueError):
            MDGraph(3, [(0, 3)])
        with pytest.raises(ValueError):
            MDGraph(3, [(0, 1), (1, 0)])

    def test_set_semantic_equality(self):
        assert MDGraph(3, [(0, 1), (1, 2)]) == MDGraph(3, [(1, 2), (0, 1)])
        assert MDGraph(3, [(0, 1)]) != MDGraph(4, [(0, 1)])

    def test_neighbors_sorted(self):
        g = MDGraph(4, [(2, 3), (0, 2), (1, 2)])
        assert g.neighbors(2) == (0, 1, 3)
        assert g.degree(2) == 3 and g.degree(0) == 1

    def test_bit_rows_match_packed(self, g_h15):
        rows = g_h15.bit_rows()
        packed = g_h15.packed_rows()
        for v in (0, 17, 2047):
            assert int.from_bytes(packed[v].tobytes(), "little") == rows[v]

    def test_dense_symmetric(self):
        g = MDGraph(5, [(0, 4), (1, 2)])
        a = g.dense_adjacency()
        assert np.array_equal(a, a.T)
        assert a.sum() == 4


class TestBuildMdg:
    def test_perfect_regular_35(self, g_h15):
        assert g_h15.vcount == 2048
        assert g_h15.is_regular() == 35
        assert g_h15.edge_count == 2048 * 35 // 2

    def test_extended_regular_140(self, g_xh16):
        assert g_xh16.is_regular() == 140
        assert g_xh16.edge_count == 2048 * 140 // 2

    def test_vasilev_same_profile(self, g_v15a):
        assert g_v15a.is_regular() == 35

    def test_edges_sit_at_minimum_distance(self, h15, g_h15):
        for u, v in g_h15.edges()[:200]:
            assert hamming_distance(h15.words[u], h15.words[v]) == 3

    def test_too_small(self):
        with pytest.raises(ValueError):
            build_mdg(Code.from_ints(3, [0]))


class TestShuffle:
    def test_deterministic(self, g_h15):
        a, pa = shuffle_graph(g_h15, 11)
        b, pb = shuffle_graph(g_h15, 11)
        assert a == b and pa == pb

    def test_perm_maps_edges(self, g_h15):
        sg, perm = shuffle_graph(g_h15, 5)
        mapped = {
            tuple(sorted((perm[u], perm[v]))) for u, v in g_h15.edges()
        }
        assert mapped == sg.edge_set()
        assert sorted(g_h15.degrees()) == sorted(sg.degrees())


class TestDimacs:
    def test_round_trip_bit_exact(self, tmp_path, g_h15):
        p = tmp_path / "g.dimacs"
        write_dimacs(g_h15, p)
        g2 = read_dimacs(p)
        assert g2 == g_h15
        assert format_dimacs(g2) == p.read_text()

    def test_comments_ignored(self):
        g = parse_dimacs("c hi\np edge 3 1\nc mid\ne 1 3\n")
        assert g == MDGraph(3, [(0, 2)])

    @pytest.mark.parametrize(
        "text,lineno",
        [
            ("p edge 3 1\ne 1 1\n", 2),
            ("p edge 3 1\ne 3 1\n", 2),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 2\ne 1 2\ne 1 2\n", 3),
            ("p edge 3 1\nx 1 2\n", 2),
            ("e 1 2\n", 1),
            ("p edge 3 1\np edge 3 1\ne 1 2\n", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, lineno):
        with pytest.raises(FormatError) as ei:
            parse_dimacs(text)
        assert ei.value.line == lineno

    def test_edge_count_mismatch(self):
        with pytest.raises(FormatError):
            parse_dimacs("p edge 3 2\ne 1 2\n")

    def test_missing_header(self):
        with pytest.raises(FormatError):
            parse_dimacs("c only a comment\n")
