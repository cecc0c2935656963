"""Backend parity: the compiled kernels and the NumPy fallback must agree
on results and on rejections, bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest

from mdgcodes import MDGraph, build_mdg, gen_family, recover_all_distances
from mdgcodes._kernels import BACKEND, available_backends, get_backend
from mdgcodes.errors import InvalidGraphError
from mdgcodes.steiner import neighborhood_block_graph
from mdgcodes.words import pairwise_distances

from conftest import two_switch


@pytest.fixture(scope="module")
def backends():
    return [get_backend(name) for name in available_backends()]


@pytest.fixture(scope="module")
def g_x8():
    return build_mdg(gen_family("ext-hamming", 3))


def test_compiled_backend_built():
    names = available_backends()
    assert "c" in names
    assert names[0] == "c"
    assert BACKEND == "c"


class TestDistanceKernel:
    def test_full_scale_parity(self, backends, g_xh16, xh16):
        packed = g_xh16.packed_rows()
        results = [b.recover_distance_matrix(packed, 16) for b in backends]
        for r in results[1:]:
            assert np.array_equal(results[0], r)
        assert results[0].dtype == np.int16
        assert np.array_equal(results[0], pairwise_distances(xh16))

    def test_single_word_rows_parity(self, backends, g_x8):
        # 16 vertices: the whole adjacency row lives in one uint64's low bits
        packed = g_x8.packed_rows()
        results = [b.recover_distance_matrix(packed, 8) for b in backends]
        for r in results[1:]:
            assert np.array_equal(results[0], r)
        off = results[0][~np.eye(16, dtype=bool)]
        assert set(np.unique(off)) == {4, 8}
        assert np.all(np.diag(results[0]) == 0)

    def test_rejection_parity(self, backends, g_xh16):
        packed = two_switch(g_xh16).packed_rows()
        seen = []
        for b in backends:
            with pytest.raises(InvalidGraphError) as info:
                b.recover_distance_matrix(packed, 16)
            seen.append(str(info.value))
        assert len(set(seen)) == 1
        assert "not a valid extended-perfect MDG" in seen[0]


class TestCommonNeighborKernel:
    def test_parity_and_degrees(self, backends, g_xh16):
        packed = g_xh16.packed_rows()
        results = [b.common_neighbor_matrix(packed) for b in backends]
        for r in results[1:]:
            assert np.array_equal(results[0], r)
        assert np.all(np.diag(results[0]) == 140)

    def test_small_graph(self, backends, g_x8):
        packed = g_x8.packed_rows()
        results = [b.common_neighbor_matrix(packed) for b in backends]
        for r in results[1:]:
            assert np.array_equal(results[0], r)
        assert np.all(np.diag(results[0]) == 14)


class TestCliqueKernel:
    def test_block_graph_parity(self, backends, g_xh16):
        dm = recover_all_distances(g_xh16)
        packed = neighborhood_block_graph(g_xh16, dm, 0).graph.packed_rows()
        results = [b.cliques_at_least(packed, 35) for b in backends]
        for r in results[1:]:
            assert results[0] == r
        assert len(results[0]) == 16
        assert all(len(c) == 35 for c in results[0])
        assert results[0] == sorted(results[0])

    def test_handmade_graph(self, backends):
        # K5 on 0..4 plus a triangle on 5..7; only maximal cliques count
        edges = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        edges += [(5, 6), (5, 7), (6, 7)]
        packed = MDGraph(8, edges).packed_rows()
        for b in backends:
            assert b.cliques_at_least(packed, 4) == [(0, 1, 2, 3, 4)]
            assert b.cliques_at_least(packed, 3) == [(0, 1, 2, 3, 4), (5, 6, 7)]
            assert b.cliques_at_least(packed, 6) == []


class TestBackendSelection:
    def _probe(self, value):
        env = os.environ.copy()
        env.pop("MDGCODES_BACKEND", None)
        if value is not None:
            env["MDGCODES_BACKEND"] = value
        return subprocess.run(
            [sys.executable, "-c", "from mdgcodes._kernels import BACKEND; print(BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
        )

    def test_env_forces_python(self):
        proc = self._probe("python")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "python"

    def test_env_requires_c(self):
        proc = self._probe("c")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "c"

    def test_default_prefers_c(self):
        proc = self._probe(None)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "c"

    def test_bogus_value_rejected(self):
        proc = self._probe("fortran")
        assert proc.returncode != 0
        assert "MDGCODES_BACKEND" in proc.stderr

    def test_get_backend_names(self):
        assert get_backend("python").BACKEND_NAME == "python"
        assert get_backend("c").BACKEND_NAME == "c"
        with pytest.raises(ValueError):
            get_backend("rust")
