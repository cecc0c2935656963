"""Reconstructing a code from its minimum distance graph.

Extended route: pick a base vertex as the zero word, read coordinates off
the point cliques of its neighborhood block graph, label the weight-4 and
weight-6 layers by counting rules, then walk weight classes upward — each
processed vertex relabels its whole neighborhood through its own point
cliques, re-deriving already-known words as a consistency check.

Distance-3 route: augment the graph with the recognized distance-4 pairs,
reconstruct the extended code, detect the parity coordinate from the two
edge classes, and puncture it away.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Optional

import numpy as np

from .distances import (
    DistanceMatrix,
    check_extended_profile,
    check_perfect_profile,
    extend_graph,
    recover_all_distances,
)
from .errors import InvalidGraphError, UnsupportedParameterError
from .generators import gen_hamming
from .mdgraph import MDGraph, build_mdg
from .steiner import enumerate_point_cliques, neighborhood_block_graph
from .words import (
    Code,
    Word,
    extend_parity,
    validate_extended_perfect,
    validate_perfect,
)


class Labeling:
    """Partial injective map vertex -> word with a distinguished base at 0."""

    __slots__ = ("vcount", "length", "base", "_words", "_vertex_of", "_mask")

    def __init__(self, vcount: int, length: int, base: int):
        if not 0 <= base < vcount:
            raise ValueError(f"base {base} out of range")
        self.vcount = vcount
        self.length = length
        self.base = base
        self._words: dict[int, Word] = {}
        self._vertex_of: dict[Word, int] = {}
        self._mask = np.zeros(vcount, dtype=bool)
        self.assign(base, Word.zero(length))

    def assign(self, vertex: int, word: Word) -> None:
        """Record vertex -> word; re-deriving an existing entry must agree."""
        if not 0 <= vertex < self.vcount:
            raise ValueError(f"vertex {vertex} out of range")
        if word.length != self.length:
            raise ValueError(f"word length {word.length}, labeling length {self.length}")
        have = self._words.get(vertex)
        if have is not None:
            if have != word:
                raise InvalidGraphError(
                    "conflicting labels for one vertex",
                    vertex=vertex, old=str(have), new=str(word),
                )
            return
        other = self._vertex_of.get(word)
        if other is not None:
            raise InvalidGraphError(
                "one word labeled onto two vertices",
                word=str(word), u=other, v=vertex,
            )
        self._words[vertex] = word
        self._vertex_of[word] = vertex
        self._mask[vertex] = True

    def word_of(self, vertex: int) -> Optional[Word]:
        return self._words.get(vertex)

    def vertex_of(self, word: Word) -> Optional[int]:
        return self._vertex_of.get(word)

    @property
    def assigned_count(self) -> int:
        return len(self._words)

    @property
    def is_total(self) -> bool:
        return len(self._words) == self.vcount

    def assigned_mask(self) -> np.ndarray:
        """Read-only bool array: which vertices carry a word."""
        return self._mask

    def items(self):
        return sorted(self._words.items())

    def to_code(self) -> Code:
        if not self.is_total:
            raise ValueError(f"labeling covers {len(self._words)}/{self.vcount} vertices")
        return Code(self.length, (self._words[v] for v in range(self.vcount)))

    def validate_edges(self, graph: MDGraph, expected_distance: int) -> None:
        """Every edge between assigned vertices must sit at the expected distance."""
        for u, v in graph.edges():
            a, b = self._words.get(u), self._words.get(v)
            if a is None or b is None:
                continue
            d = (a.bits ^ b.bits).bit_count()
            if d != expected_distance:
                raise InvalidGraphError(
                    "labeled edge at the wrong distance",
                    u=u, v=v, distance=d, expected=expected_distance,
                )


def assign_weight4(graph: MDGraph, dmatrix: DistanceMatrix, labeling: Labeling) -> Labeling:
    """Label the base's neighbors with weight-4 words.

    The point cliques of the base's neighborhood block graph are taken in
    lexicographic order as coordinates 1..n — the free choice that pins the
    coordinate system.  Each neighbor's support is its 4 cliques.
    """
    if labeling.assigned_count != 1:
        raise ValueError("weight-4 assignment needs a labeling with only the base")
    n = dmatrix.length
    bgraph = neighborhood_block_graph(graph, dmatrix, labeling.base)
    cliques = enumerate_point_cliques(bgraph, n)
    masks = [0] * bgraph.graph.vcount
    for k, clique in enumerate(cliques):
        for t in clique:
            masks[t] |= 1 << k
    for t, mask in enumerate(masks):
        labeling.assign(bgraph.block_of[t], Word(n, mask))
    return labeling


def assign_weight6(graph: MDGraph, dmatrix: DistanceMatrix, labeling: Labeling) -> Labeling:
    """Label the weight-6 layer by counting weight-4 neighbors per coordinate.

    A coordinate in the support sees exactly 10 of them; one outside sees at
    most 4.  Any other count is impossible for a genuine graph.
    """
    n = dmatrix.length
    base = labeling.base
    base_row = dmatrix.row(base)
    for x in np.nonzero(base_row == 6)[0].tolist():
        counts = [0] * n
        for y in graph.neighbors(x):
            if base_row[y] != 4:
                continue
            wy = labeling.word_of(y)
            if wy is None:
                raise InvalidGraphError("weight-4 neighbor unlabeled", x=x, y=y)
            bits = wy.bits
            while bits:
                low = bits & -bits
                counts[low.bit_length() - 1] += 1
                bits ^= low
        support = 0
        for i, c in enumerate(counts):
            if c == 10:
                support |= 1 << i
            elif c > 4:
                raise InvalidGraphError(
                    "not a valid extended-perfect MDG: weight-4 neighbor count "
                    "census failed",
                    x=int(x), coordinate=i + 1, count=c,
                )
        if support.bit_count() != 6:
            raise InvalidGraphError(
                "weight-6 support does not have 6 coordinates",
                x=int(x), support=support.bit_count(),
            )
        labeling.assign(int(x), Word(n, support))
    return labeling


def _derive_step(graph: MDGraph, dmatrix: DistanceMatrix, labeling: Labeling, x: int):
    """Labels that processing x induces on its neighborhood, without assigning.

    For each point clique K of x's neighborhood block graph, the coordinate
    of K is the single common coordinate of the differences to the already
    labeled members; each neighbor then differs from x exactly on its 4
    cliques' coordinates.
    """
    lx = labeling.word_of(x)
    if lx is None:
        raise ValueError(f"step vertex {x} is unassigned")
    base_row = dmatrix.row(labeling.base)
    wx = int(base_row[x])
    needed = base_row <= wx
    missing = needed & ~labeling.assigned_mask()
    if missing.any():
        raise InvalidGraphError(
            "weight classes processed out of order",
            x=x, unassigned=int(np.nonzero(missing)[0][0]),
        )
    n = dmatrix.length
    bgraph = neighborhood_block_graph(graph, dmatrix, x)
    cliques = enumerate_point_cliques(bgraph, n)
    full = (1 << n) - 1
    coords = []
    for k, clique in enumerate(cliques):
        acc = full
        witnesses = 0
        for t in clique:
            wy = labeling.word_of(bgraph.block_of[t])
            if wy is None:
                continue
            acc &= lx.bits ^ wy.bits
            witnesses += 1
        if acc == 0 or acc & (acc - 1):
            raise InvalidGraphError(
                "clique does not determine a single coordinate",
                x=x, clique=k, candidates=acc.bit_count(), witnesses=witnesses,
            )
        coords.append(acc.bit_length())
    if sorted(coords) != list(range(1, n + 1)):
        raise InvalidGraphError(
            "clique coordinates do not cover every coordinate once", x=x
        )
    masks = [0] * bgraph.graph.vcount
    for k, clique in enumerate(cliques):
        bit = 1 << (coords[k] - 1)
        for t in clique:
            masks[t] |= bit
    return [
        (bgraph.block_of[t], Word(n, lx.bits ^ mask)) for t, mask in enumerate(masks)
    ]


def extend_labeling_step(
    graph: MDGraph, dmatrix: DistanceMatrix, labeling: Labeling, x: int
) -> Labeling:
    """Process one assigned vertex: derive and record labels for all its
    neighbors, re-checking any that were already known."""
    for vertex, word in _derive_step(graph, dmatrix, labeling, x):
        labeling.assign(vertex, word)
    return labeling


_STORED_EXTENDED = {4: lambda: Code.from_ints(4, [0b0000, 0b1111]),
                    8: lambda: extend_parity(gen_hamming(3))}
_STORED_PERFECT = {3: lambda: Code.from_ints(3, [0b000, 0b111]),
                   7: lambda: gen_hamming(3)}


def _isomorphism_labeling(graph: MDGraph, code: Code, base: int) -> Labeling:
    """Label a small graph by a stored code via explicit isomorphism search.

    Vertices are matched to the stored code's own MDG (base forced onto the
    zero word), depth-first in breadth-first order from the base, pruning on
    exact adjacency agreement.  Used only at the tiny lengths where codes
    are unique.
    """
    target = build_mdg(code)
    if sorted(graph.degrees()) != sorted(target.degrees()):
        raise InvalidGraphError("degree profile differs from the unique code's graph")
    zero_at = code.index(Word.zero(code.length))
    order = []
    seen = {base}
    queue = [base]
    while queue:
        u = queue.pop(0)
        order.append(u)
        for w in graph.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(order) != graph.vcount:
        raise InvalidGraphError("graph is disconnected")
    gm = {}
    used = set()

    def fits(u: int, t: int) -> bool:
        if graph.degree(u) != target.degree(t):
            return False
        for w, tw in gm.items():
            if graph.has_edge(u, w) != target.has_edge(t, tw):
                return False
        return True

    def search(pos: int) -> bool:
        if pos == len(order):
            return True
        u = order[pos]
        candidates = [zero_at] if u == base else range(target.vcount)
        for t in candidates:
            if t in used or not fits(u, t):
                continue
            gm[u] = t
            used.add(t)
            if search(pos + 1):
                return True
            del gm[u]
            used.discard(t)
        return False

    if not search(0):
        raise InvalidGraphError("graph is not isomorphic to the unique code's graph")
    labeling = Labeling(graph.vcount, code.length, base)
    for u, t in gm.items():
        labeling.assign(u, code.words[t])
    return labeling


def reconstruct_extended(
    graph: MDGraph, base: int = 0, threads: int = 1
) -> tuple[Code, Labeling]:
    """Code and total labeling from an extended-code MDG.

    The output code lists words in vertex order, so its own MDG must equal
    the input graph edge-for-edge — that identity is checked before
    returning, as is the extended-perfect validator.
    """
    if not 0 <= base < graph.vcount:
        raise ValueError(f"base vertex {base} out of range")
    v = check_extended_profile(graph)
    if v <= 8:
        labeling = _isomorphism_labeling(graph, _STORED_EXTENDED[v](), base)
    elif v > 16:
        raise UnsupportedParameterError(f"length {v} beyond supported scale")
    else:
        dmatrix = recover_all_distances(graph)
        labeling = Labeling(graph.vcount, v, base)
        assign_weight4(graph, dmatrix, labeling)
        assign_weight6(graph, dmatrix, labeling)
        base_row = dmatrix.row(base)
        # Start deriving at the weight-4 layer: some heavier codewords have
        # no weight-6 neighbor at all (their lightest neighbor is weight 4),
        # and re-deriving the counted weight-6 labels cross-checks them.
        w = 4
        while not labeling.is_total:
            if w > v:
                raise InvalidGraphError(
                    "labeling incomplete after all weight classes",
                    assigned=labeling.assigned_count,
                )
            xs = np.nonzero(base_row == w)[0].tolist()
            if threads > 1 and len(xs) > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    batches = list(
                        pool.map(lambda x: _derive_step(graph, dmatrix, labeling, x), xs)
                    )
                for batch in batches:
                    for vertex, word in batch:
                        labeling.assign(vertex, word)
            else:
                for x in xs:
                    extend_labeling_step(graph, dmatrix, labeling, x)
            w += 2
    code = labeling.to_code()
    check = validate_extended_perfect(code)
    if not check:
        raise InvalidGraphError(f"reconstructed code invalid: {check.reason}")
    if build_mdg(code).edge_set() != graph.edge_set():
        raise InvalidGraphError("reconstructed code's graph differs from the input")
    return code, labeling


def detect_parity_coordinate(
    ext_code: Code, labeling: Labeling, old_edges: Iterable, new_edges: Iterable
) -> int:
    """The one coordinate inside every old edge's difference and no new edge's.

    Old edges join former minimum-distance pairs, whose parity bits differ
    after extension; new edges join distance-4 pairs, whose parity bits
    agree.
    """
    n = ext_code.length
    acc = (1 << n) - 1
    for u, v in sorted(old_edges):
        acc &= labeling.word_of(u).bits ^ labeling.word_of(v).bits
        if not acc:
            break
    for u, v in sorted(new_edges):
        acc &= ~(labeling.word_of(u).bits ^ labeling.word_of(v).bits)
        if not acc:
            break
    if acc == 0 or acc & (acc - 1):
        raise InvalidGraphError(
            "parity coordinate candidates not a singleton", candidates=acc.bit_count()
        )
    return acc.bit_length()


def reconstruct_perfect(
    graph: MDGraph, base: int = 0, threads: int = 1
) -> tuple[Code, Labeling]:
    """Code and total labeling from a distance-3 MDG.

    Augment with recognized distance-4 pairs, reconstruct the extended code,
    find the parity coordinate, puncture it, and re-verify everything
    against the original graph.
    """
    if not 0 <= base < graph.vcount:
        raise ValueError(f"base vertex {base} out of range")
    v = check_perfect_profile(graph)
    if v <= 8:
        labeling = _isomorphism_labeling(graph, _STORED_PERFECT[v](), base)
    elif v > 15:
        raise UnsupportedParameterError(f"length {v} beyond supported scale")
    else:
        augmented, old_edges, new_edges = extend_graph(graph)
        ext_code, ext_labeling = reconstruct_extended(augmented, base, threads)
        p = detect_parity_coordinate(ext_code, ext_labeling, old_edges, new_edges)
        low = (1 << (p - 1)) - 1
        labeling = Labeling(graph.vcount, v, base)
        for vertex, word in ext_labeling.items():
            bits = (word.bits & low) | (word.bits >> p) << (p - 1)
            labeling.assign(vertex, Word(v, bits))
    code = labeling.to_code()
    check = validate_perfect(code)
    if not check:
        raise InvalidGraphError(f"reconstructed code invalid: {check.reason}")
    if build_mdg(code).edge_set() != graph.edge_set():
        raise InvalidGraphError("reconstructed code's graph differs from the input")
    return code, labeling
