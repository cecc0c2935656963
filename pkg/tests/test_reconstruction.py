import numpy as np
import pytest

import mdgcodes.reconstruction as reconstruction_mod
from mdgcodes import (
    Code,
    InvalidGraphError,
    Labeling,
    UnsupportedParameterError,
    Word,
    build_mdg,
    detect_parity_coordinate,
    extend_parity,
    gen_hamming,
    reconstruct_extended,
    reconstruct_perfect,
    recover_all_distances,
    shuffle_graph,
    validate_extended_perfect,
    validate_perfect,
)
from mdgcodes.mdgraph import MDGraph
from mdgcodes.reconstruction import (
    _derive_step,
    assign_weight4,
    assign_weight6,
)
from mdgcodes.words import hamming_distance, pairwise_distances


class TestLabeling:
    def test_base_gets_zero(self):
        lab = Labeling(4, 5, base=2)
        assert lab.word_of(2) == Word.zero(5)
        assert lab.assigned_count == 1

    def test_conflict_rejected(self):
        lab = Labeling(4, 3, base=0)
        lab.assign(1, Word(3, 0b101))
        lab.assign(1, Word(3, 0b101))  # re-deriving the same label is fine
        with pytest.raises(InvalidGraphError) as ei:
            lab.assign(1, Word(3, 0b011))
        assert "conflicting labels" in str(ei.value)

    def test_injectivity_enforced(self):
        lab = Labeling(4, 3, base=0)
        lab.assign(1, Word(3, 0b101))
        with pytest.raises(InvalidGraphError) as ei:
            lab.assign(2, Word(3, 0b101))
        assert "two vertices" in str(ei.value)

    def test_to_code_vertex_order(self):
        lab = Labeling(3, 2, base=1)
        lab.assign(0, Word(2, 0b01))
        lab.assign(2, Word(2, 0b11))
        assert lab.to_code() == Code.from_ints(2, [0b01, 0b00, 0b11])
        assert lab.to_code().words[1] == Word.zero(2)

    def test_validate_edges(self):
        lab = Labeling(2, 4, base=0)
        lab.assign(1, Word(4, 0b1111))
        g = MDGraph(2, [(0, 1)])
        lab.validate_edges(g, 4)
        with pytest.raises(InvalidGraphError):
            lab.validate_edges(g, 3)


class TestSmallLengths:
    def test_perfect_length3(self):
        g = build_mdg(Code.from_ints(3, [0, 7]))
        code, lab = reconstruct_perfect(g)
        assert code == Code.from_ints(3, [0, 7])
        assert lab.word_of(0) == Word.zero(3)

    def test_perfect_length7_shuffled(self, h7):
        sg, _ = shuffle_graph(build_mdg(h7), 13)
        code, lab = reconstruct_perfect(sg)
        assert validate_perfect(code).ok
        assert build_mdg(code).edge_set() == sg.edge_set()

    def test_extended_length4(self):
        g = build_mdg(Code.from_ints(4, [0b0000, 0b1111]))
        code, _ = reconstruct_extended(g)
        assert validate_extended_perfect(code).ok

    def test_extended_length8_shuffled(self, h7):
        x8 = extend_parity(h7)
        sg, _ = shuffle_graph(build_mdg(x8), 23)
        code, lab = reconstruct_extended(sg)
        assert validate_extended_perfect(code).ok
        assert build_mdg(code).edge_set() == sg.edge_set()

    def test_extended_length8_alternate_base(self, h7):
        g = build_mdg(extend_parity(h7))
        code, lab = reconstruct_extended(g, base=5)
        assert lab.word_of(5) == Word.zero(8)
        assert validate_extended_perfect(code).ok
        assert build_mdg(code).edge_set() == g.edge_set()


@pytest.fixture(scope="module")
def recon_xh16(g_xh16):
    return reconstruct_extended(g_xh16)


class TestFullScaleExtended:
    def test_output_is_valid_and_edge_exact(self, recon_xh16, g_xh16):
        code, lab = recon_xh16
        assert validate_extended_perfect(code).ok
        assert build_mdg(code).edge_set() == g_xh16.edge_set()
        assert lab.is_total
        # output words follow vertex ids
        assert all(code.words[v] == lab.word_of(v) for v in range(0, 2048, 97))

    def test_base_vertex_is_zero_word(self, recon_xh16):
        code, lab = recon_xh16
        assert lab.word_of(0) == Word.zero(16)

    def test_threads_do_not_change_output(self, recon_xh16, g_xh16):
        code1, _ = recon_xh16
        code2, lab2 = reconstruct_extended(g_xh16, threads=4)
        assert code2.words == code1.words  # bit-identical, not just set-equal

    def test_labeling_is_isometric(self, recon_xh16, xh16, g_xh16):
        # distances between labels equal recovered distances between vertices
        code, lab = recon_xh16
        dm = recover_all_distances(g_xh16)
        rng = np.random.default_rng(1)
        for u, v in rng.integers(0, 2048, size=(60, 2)).tolist():
            assert hamming_distance(lab.word_of(u), lab.word_of(v)) == abs(
                dm.entry(u, v)
            )


class TestWeightLayers:
    def test_weight4_needs_fresh_labeling(self, g_xh16):
        dm = recover_all_distances(g_xh16)
        lab = Labeling(2048, 16, base=0)
        assign_weight4(g_xh16, dm, lab)
        with pytest.raises(ValueError):
            assign_weight4(g_xh16, dm, lab)

    def test_weight6_supports_have_six_coordinates(self, g_xh16):
        dm = recover_all_distances(g_xh16)
        lab = Labeling(2048, 16, base=0)
        assign_weight4(g_xh16, dm, lab)
        assign_weight6(g_xh16, dm, lab)
        row = dm.row(0)
        for x in np.nonzero(row == 6)[0].tolist():
            assert lab.word_of(x).weight == 6

    def test_out_of_order_rejected(self, xh16, g_xh16):
        dm = recover_all_distances(g_xh16)
        lab = Labeling(2048, 16, base=0)
        assign_weight4(g_xh16, dm, lab)
        # hand a weight-8 vertex its true label, then try to process it
        # while the weight-6 layer is still unassigned
        x8 = int(np.nonzero(dm.row(0) == 8)[0][0])
        lab.assign(x8, xh16.words[x8])
        with pytest.raises(InvalidGraphError) as ei:
            _derive_step(g_xh16, dm, lab, x8)
        assert "out of order" in str(ei.value)

    def test_unassigned_step_vertex_rejected(self, g_xh16):
        dm = recover_all_distances(g_xh16)
        lab = Labeling(2048, 16, base=0)
        with pytest.raises(ValueError):
            _derive_step(g_xh16, dm, lab, 1)


class TestParityDetection:
    @staticmethod
    def _edge_classes(h7):
        d = pairwise_distances(h7)
        old = frozenset(
            (i, j) for i in range(16) for j in range(i + 1, 16) if d[i, j] == 3
        )
        new = frozenset(
            (i, j) for i in range(16) for j in range(i + 1, 16) if d[i, j] == 4
        )
        return old, new

    def test_detects_appended_coordinate(self, h7):
        ext = extend_parity(h7)
        lab = Labeling(16, 8, base=0)
        for i, w in enumerate(ext.words):
            lab.assign(i, w)
        old, new = self._edge_classes(h7)
        assert detect_parity_coordinate(ext, lab, old, new) == 8

    def test_swapped_classes_rejected(self, h7):
        ext = extend_parity(h7)
        lab = Labeling(16, 8, base=0)
        for i, w in enumerate(ext.words):
            lab.assign(i, w)
        old, new = self._edge_classes(h7)
        with pytest.raises(InvalidGraphError):
            detect_parity_coordinate(ext, lab, new, old)


class TestScalePreconditions:
    def test_extended_beyond_scale(self, monkeypatch):
        monkeypatch.setattr(
            reconstruction_mod, "check_extended_profile", lambda g: 32
        )
        with pytest.raises(UnsupportedParameterError):
            reconstruct_extended(MDGraph(2, [(0, 1)]))

    def test_perfect_beyond_scale(self, monkeypatch):
        monkeypatch.setattr(
            reconstruction_mod, "check_perfect_profile", lambda g: 31
        )
        with pytest.raises(UnsupportedParameterError):
            reconstruct_perfect(MDGraph(2, [(0, 1)]))

    def test_junk_graph_rejected(self):
        with pytest.raises(InvalidGraphError):
            reconstruct_extended(MDGraph(10, [(0, 1)]))
