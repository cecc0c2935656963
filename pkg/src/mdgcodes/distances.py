"""Distance information from graph topology alone.

For graphs of extended codes (even pairwise distances), the full matrix is
recoverable by induction on distance.  For graphs of distance-3 codes, the
pairs at distance 4 are recognizable from common-neighbor counts, which is
what the extension step needs.
"""

from __future__ import annotations

from math import comb
from typing import Optional

import numpy as np

from . import _kernels
from .errors import InvalidGraphError
from .mdgraph import MDGraph

UNRESOLVED = -1

# Hard scale precondition: graphs of codes longer than this are never
# treated as valid inputs.  The next admissible lengths (31 perfect, 32
# extended) would need 2^31/32 = 67M-vertex graphs — out of scope.
SUPPORTED_MAX_LENGTH = 30


def deduce_extended_length(vcount: int) -> Optional[int]:
    """The even length v <= SUPPORTED_MAX_LENGTH with vcount = 2^v / (2v).

    Larger lengths exist arithmetically but are excluded by precondition.
    """
    for v in range(4, SUPPORTED_MAX_LENGTH + 1, 2):
        if (1 << v) == vcount * 2 * v:
            return v
    return None


def deduce_perfect_length(vcount: int) -> Optional[int]:
    """The length v <= SUPPORTED_MAX_LENGTH with vcount = 2^v / (v+1).

    Larger lengths exist arithmetically but are excluded by precondition.
    """
    for v in range(3, SUPPORTED_MAX_LENGTH + 1):
        if (1 << v) == vcount * (v + 1):
            return v
    return None


def expected_extended_degree(v: int) -> int:
    return v * (v - 1) * (v - 2) // 24


def expected_perfect_degree(v: int) -> int:
    return v * (v - 1) // 6


def check_extended_profile(graph: MDGraph) -> int:
    """Deduced length v if the vertex count and regular degree match an
    extended-perfect profile; raises otherwise."""
    v = deduce_extended_length(graph.vcount)
    if v is None:
        raise InvalidGraphError(
            "vertex count matches no extended-perfect code size", vcount=graph.vcount
        )
    deg = graph.is_regular()
    want = expected_extended_degree(v)
    if deg != want:
        raise InvalidGraphError(
            "graph is not regular of the extended-perfect degree",
            length=v, expected_degree=want, observed=deg,
        )
    return v


def check_perfect_profile(graph: MDGraph) -> int:
    v = deduce_perfect_length(graph.vcount)
    if v is None:
        raise InvalidGraphError(
            "vertex count matches no 1-perfect code size", vcount=graph.vcount
        )
    deg = graph.is_regular()
    want = expected_perfect_degree(v)
    if deg != want:
        raise InvalidGraphError(
            "graph is not regular of the 1-perfect degree",
            length=v, expected_degree=want, observed=deg,
        )
    return v


class DistanceMatrix:
    """Symmetric pairwise distances over graph vertex ids; -1 = unresolved."""

    __slots__ = ("_m", "length")

    def __init__(self, matrix: np.ndarray, length: int):
        m = np.asarray(matrix, dtype=np.int16)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("distance matrix must be square")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "_m", m)
        object.__setattr__(self, "length", length)

    def __setattr__(self, name, value):
        raise AttributeError("DistanceMatrix is immutable")

    @property
    def vcount(self) -> int:
        return self._m.shape[0]

    def entry(self, i: int, j: int) -> int:
        return int(self._m[i, j])

    def row(self, i: int) -> np.ndarray:
        """Read-only view of one source's distances."""
        return self._m[i]

    def submatrix(self, ids: np.ndarray) -> np.ndarray:
        """Distances restricted to the given vertex ids (copy)."""
        return self._m[np.ix_(ids, ids)]

    def to_array(self) -> np.ndarray:
        return self._m.copy()


def recover_all_distances(graph: MDGraph) -> DistanceMatrix:
    """Full pairwise distance matrix of a (purported) extended-code MDG.

    Every resolved entry is even and in [4, v] off the diagonal, entries are
    4 exactly on edges, and the matrix is symmetric; violations of any census
    along the way raise InvalidGraphError naming the offending source.
    """
    v = check_extended_profile(graph)
    mat = _kernels.recover_distance_matrix(graph.packed_rows(), v)
    if not np.array_equal(mat, mat.T):
        bad = np.argwhere(mat != mat.T)[0]
        raise InvalidGraphError(
            "recovered distances are not symmetric",
            source=int(bad[0]), vertex=int(bad[1]),
        )
    off = ~np.eye(graph.vcount, dtype=bool)
    vals = mat[off]
    if (vals % 2).any() or vals.min() < 4 or vals.max() > v:
        raise InvalidGraphError("recovered distances outside the legal range")
    if not np.array_equal(mat == 4, graph.dense_adjacency()):
        raise InvalidGraphError("distance-4 entries disagree with the edge set")
    return DistanceMatrix(mat, v)


def recover_distances_from(graph: MDGraph, source: int) -> np.ndarray:
    """One source's distances, without materializing the full matrix.

    Same stage rules and censuses as recover_all_distances; useful when a
    full V x V matrix is too large and as an independent cross-check.
    """
    v = check_extended_profile(graph)
    if not 0 <= source < graph.vcount:
        raise ValueError(f"source {source} out of range")
    packed = graph.packed_rows()
    width = packed.shape[1]

    def pack_mask(bools: np.ndarray) -> np.ndarray:
        bits8 = np.packbits(bools, bitorder="little")
        out = np.zeros(width * 8, dtype=np.uint8)
        out[: bits8.size] = bits8
        return out.view(np.uint64)

    dist = np.full(graph.vcount, UNRESOLVED, dtype=np.int16)
    dist[source] = 0
    nbrs = np.array(graph.neighbors(source), dtype=np.int64)
    dist[nbrs] = 4
    for i in range(4, v - 1, 2):
        unresolved = dist == UNRESOLVED
        if not unresolved.any():
            break
        prev_mask = pack_mask(dist == i - 2)
        cur_mask = pack_mask(dist == i)
        has_prev = ((packed & prev_mask[None, :]) != 0).any(axis=1)
        counts = np.bitwise_count(packed & cur_mask[None, :]).sum(axis=1).astype(np.int64)
        hi = comb(i + 2, 3)
        lo4 = comb(i + 4, 3)
        via_path = unresolved & has_prev
        via_count = unresolved & ~via_path & (counts >= hi)
        off = via_count & (counts != hi)
        if off.any():
            z = int(np.argwhere(off)[0][0])
            raise InvalidGraphError(
                "not a valid extended-perfect MDG: neighbor count above threshold "
                "but not exact",
                source=source, iteration=i, vertex=z, count=int(counts[z]), expected=hi,
            )
        rest = unresolved & ~via_path & ~via_count
        between = rest & (4 * counts > lo4)
        if between.any():
            z = int(np.argwhere(between)[0][0])
            raise InvalidGraphError(
                "not a valid extended-perfect MDG: neighbor count strictly between "
                "bounds",
                source=source, iteration=i, vertex=z, count=int(counts[z]),
            )
        dist[via_path | via_count] = i + 2
    if (dist == UNRESOLVED).any():
        z = int(np.argwhere(dist == UNRESOLVED)[0][0])
        raise InvalidGraphError(
            "not a valid extended-perfect MDG: unresolved pair after all stages",
            source=source, vertex=z,
        )
    return dist


def recognize_distance4_pairs(graph: MDGraph) -> set:
    """Non-adjacent pairs at Hamming distance 4 in a (purported) distance-3 MDG.

    Such pairs have exactly 6 common neighbors; distance-6 pairs have at most
    4; larger distances share none.  Counts of 5 or above 6 are impossible
    for a genuine graph and raise.
    """
    check_perfect_profile(graph)
    counts = _kernels.common_neighbor_matrix(graph.packed_rows())
    adj = graph.dense_adjacency()
    nonadj = ~adj & ~np.eye(graph.vcount, dtype=bool)
    bad = nonadj & ((counts == 5) | (counts > 6))
    if bad.any():
        u, w = (int(a) for a in np.argwhere(bad)[0])
        raise InvalidGraphError(
            "not a valid 1-perfect MDG: impossible common-neighbor count",
            u=u, v=w, count=int(counts[u, w]),
        )
    iu, ju = np.nonzero(np.triu(nonadj & (counts == 6), 1))
    return {(int(a), int(b)) for a, b in zip(iu, ju)}


def extend_graph(graph: MDGraph):
    """Add the recognized distance-4 pairs as edges.

    Returns (augmented graph, old edge set, new edge set).  The result is
    the MDG of the parity-extended code under the same vertex ids.  Input
    whose degree already matches an extended profile is rejected: running
    recognition on an already-augmented graph is undefined.
    """
    v_ext = deduce_extended_length(graph.vcount)
    if v_ext is not None and graph.is_regular() == expected_extended_degree(v_ext):
        raise InvalidGraphError(
            "degree already matches the extended profile", length=v_ext
        )
    new_pairs = recognize_distance4_pairs(graph)
    old = graph.edge_set()
    augmented = MDGraph(
        graph.vcount, sorted(old | new_pairs), note="extended by distance-4 pairs"
    )
    return augmented, frozenset(old), frozenset(new_pairs)
