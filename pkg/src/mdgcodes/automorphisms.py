"""Moving automorphisms between a code and its minimum distance graph.

Code to graph is the obvious index action.  Graph to code inverts it by
exact column matching: once the graph permutation is read back as a map on
words, the translation is its image of zero, and each coordinate of the
domain matches the unique coordinate of the range whose bit column over the
whole code agrees.  For distance-3 codes the graph map is first lifted to
the augmented graph, transferred on the extended code, and then punctured.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .distances import extend_graph
from .errors import InvalidGraphError
from .mdgraph import MDGraph, build_mdg
from .reconstruction import Labeling
from .words import (
    Code,
    CodeMap,
    Word,
    apply_codemap,
    extend_parity,
    validate_perfect,
)


@dataclass(frozen=True)
class GraphAut:
    """Vertex permutation known to preserve some graph's edge set."""

    perm: tuple[int, ...]

    def compose(self, other: "GraphAut") -> "GraphAut":
        """Permutation equal to applying ``other`` first, then ``self``."""
        return GraphAut(tuple(self.perm[p] for p in other.perm))

    def inverse(self) -> "GraphAut":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return GraphAut(tuple(inv))


def preserves_edges(perm: Sequence[int], graph: MDGraph) -> bool:
    if sorted(perm) != list(range(graph.vcount)):
        return False
    adj = graph.dense_adjacency()
    p = np.asarray(perm, dtype=np.int64)
    return bool(np.array_equal(adj[np.ix_(p, p)], adj))


def make_graph_aut(perm: Sequence[int], graph: MDGraph) -> GraphAut:
    """Verified construction; raises if the permutation moves any edge off."""
    if not preserves_edges(perm, graph):
        raise InvalidGraphError("permutation does not preserve the edge set")
    return GraphAut(tuple(perm))


def identity_labeling(code: Code) -> Labeling:
    """Vertex i -> i-th word, based at the zero word (which must be present)."""
    zero = Word.zero(code.length)
    if zero not in code:
        raise ValueError("identity labeling requires the zero word in the code")
    labeling = Labeling(len(code), code.length, code.index(zero))
    for i, w in enumerate(code.words):
        labeling.assign(i, w)
    return labeling


def code_aut_to_graph_aut(m: CodeMap, code: Code, graph: MDGraph) -> GraphAut:
    """Index action of a code automorphism on the code's own graph."""
    if apply_codemap(m, code) != code:
        raise ValueError("map is not an automorphism of the code")
    if graph.vcount != len(code):
        raise ValueError("graph and code sizes differ")
    perm = tuple(code.index(m.apply(w)) for w in code.words)
    if not preserves_edges(perm, graph):
        raise InvalidGraphError(
            "induced vertex permutation does not preserve the edge set"
        )
    return GraphAut(perm)


def graph_aut_to_code_aut(
    alpha: GraphAut, code: Code, graph: MDGraph, labeling: Labeling
) -> CodeMap:
    """Read a graph automorphism back as a (permutation, translation) pair.

    The labeling must be total and cover exactly the code's words.  The
    returned map acts on every codeword exactly as alpha does through the
    labeling; failure to match columns or to verify means alpha does not
    come from a code automorphism.
    """
    if not preserves_edges(alpha.perm, graph):
        raise InvalidGraphError("permutation does not preserve the edge set")
    if not labeling.is_total or labeling.vcount != len(code):
        raise ValueError("labeling does not cover the code")
    n = code.length
    imaged = {}
    for u in range(graph.vcount):
        w = labeling.word_of(u)
        if w not in code:
            raise ValueError("labeling uses a word outside the code")
        imaged[w] = labeling.word_of(alpha.perm[u])
    trans = imaged[Word.zero(n)]
    src_cols = [0] * n
    img_cols = [0] * n
    for idx, w in enumerate(code.words):
        shifted = imaged[w].bits ^ trans.bits
        for i in range(n):
            src_cols[i] |= (w.bits >> i & 1) << idx
            img_cols[i] |= (shifted >> i & 1) << idx
    by_img = {}
    for j, col in enumerate(img_cols):
        if col in by_img:
            raise InvalidGraphError(
                "image bit columns are not pairwise distinct", coordinate=j + 1
            )
        by_img[col] = j
    perm = []
    for i, col in enumerate(src_cols):
        j = by_img.get(col)
        if j is None:
            raise InvalidGraphError(
                "no matching image column for a coordinate", coordinate=i + 1
            )
        perm.append(j + 1)
    m = CodeMap(tuple(perm), trans)
    for w in code.words:
        if m.apply(w) != imaged[w]:
            raise InvalidGraphError(
                "column-matched map does not reproduce the vertex action",
                word=str(w),
            )
    return m


def perfect_aut_transfer(alpha: GraphAut, code: Code, graph: MDGraph) -> CodeMap:
    """Graph-to-code transfer for a distance-3 code.

    Lifts alpha to the distance-4-augmented graph (the new edges are defined
    by counts, so a genuine automorphism maps them onto themselves), runs
    the extended transfer, checks the parity coordinate is fixed, and drops
    it.
    """
    check = validate_perfect(code)
    if not check:
        raise ValueError(f"not a perfect code: {check.reason}")
    if graph.vcount != len(code):
        raise ValueError("graph and code sizes differ")
    if not preserves_edges(alpha.perm, graph):
        raise InvalidGraphError("permutation does not preserve the edge set")
    augmented, _old, new = extend_graph(graph)
    mapped_new = frozenset(
        (a, b) if a < b else (b, a)
        for a, b in ((alpha.perm[u], alpha.perm[v]) for u, v in new)
    )
    if mapped_new != new:
        raise InvalidGraphError("permutation does not stabilize the added edges")
    ext_code = extend_parity(code)
    ext_graph = build_mdg(ext_code)
    if ext_graph.edge_set() != augmented.edge_set():
        raise InvalidGraphError("augmented graph disagrees with the extended code")
    m_ext = graph_aut_to_code_aut(alpha, ext_code, ext_graph, identity_labeling(ext_code))
    n = code.length
    if m_ext.perm[n] != n + 1:
        raise InvalidGraphError(
            "transfer does not stabilize the parity coordinate",
            image=m_ext.perm[n],
        )
    m = CodeMap(m_ext.perm[:n], Word(n, m_ext.trans.bits & ((1 << n) - 1)))
    if apply_codemap(m, code) != code:
        raise InvalidGraphError("restricted map is not an automorphism of the code")
    return m


# ---------------------------------------------------------------------------
# Samplers.  Each returned map is verified against the code it belongs to.


def _random_invertible(m: int, rng: random.Random) -> list[int]:
    """Rows of a random invertible m x m bit matrix (row i as an int)."""
    while True:
        rows = [rng.getrandbits(m) for _ in range(m)]
        work = rows[:]
        rank = 0
        for col in range(m):
            pivot = next(
                (r for r in range(rank, m) if work[r] >> col & 1), None
            )
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            for r in range(m):
                if r != rank and work[r] >> col & 1:
                    work[r] ^= work[rank]
            rank += 1
        if rank == m:
            return rows


def _matrix_coordinate_perm(rows: list[int], n: int) -> tuple[int, ...]:
    """Permutation of 1..n induced by an invertible matrix acting on the
    binary values of the coordinates (n = 2^m - 1)."""
    m = len(rows)
    perm = []
    for c in range(1, n + 1):
        image = 0
        for bit in range(m):
            if c >> bit & 1:
                image ^= rows[bit]
        perm.append(image)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("matrix action is not a coordinate permutation")
    return tuple(perm)


def hamming_automorphisms(code: Code, count: int, seed: int) -> list[CodeMap]:
    """Maps combining a random linear coordinate action with a random
    codeword translation; each verified."""
    n = code.length
    m = n.bit_length()
    if (1 << m) - 1 != n:
        raise ValueError(f"length {n} is not 2^m - 1")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        perm = _matrix_coordinate_perm(_random_invertible(m, rng), n)
        trans = code.words[rng.randrange(len(code))]
        cand = CodeMap(perm, trans)
        if apply_codemap(cand, code) != code:
            raise ValueError("construction produced a non-automorphism")
        out.append(cand)
    return out


def vasilev_automorphisms(code: Code, base_length: int, count: int, seed: int) -> list[CodeMap]:
    """Translations by words (u, u, parity(u)) — the translations that
    survive a nonlinear f; each verified."""
    n = code.length
    if n != 2 * base_length + 1:
        raise ValueError("length does not match the doubling construction")
    rng = random.Random(seed)
    out = []
    ident = tuple(range(1, n + 1))
    for _ in range(count):
        u = rng.getrandbits(base_length)
        bits = u | u << base_length | (u.bit_count() & 1) << (n - 1)
        cand = CodeMap(ident, Word(n, bits))
        if apply_codemap(cand, code) != code:
            raise ValueError("kernel translation is not an automorphism")
        out.append(cand)
    return out


def extend_codemap(m: CodeMap) -> CodeMap:
    """Lift a map to the parity-extended code: fix the new coordinate and
    give the translation its parity bit."""
    n = m.length
    perm = m.perm + (n + 1,)
    trans = Word(n + 1, m.trans.bits | (m.trans.weight & 1) << n)
    return CodeMap(perm, trans)


def sample_code_automorphisms(
    code: Code,
    count: int,
    seed: int,
    perm_generators: Iterable[tuple[int, ...]] = (),
    max_trials: Optional[int] = None,
) -> list[CodeMap]:
    """Generic sampler for a code file of unknown construction.

    Builds a pool from verified codeword translations plus any supplied
    coordinate-permutation generators, then returns random products.  May
    come back short when few translations are automorphisms; deterministic
    per seed.
    """
    rng = random.Random(seed)
    n = code.length
    pool = [CodeMap.identity(n)]
    for perm in perm_generators:
        cand = CodeMap(tuple(perm), Word.zero(n))
        if apply_codemap(cand, code) != code:
            raise ValueError(f"supplied permutation {perm} is not an automorphism")
        pool.append(cand)
    trials = max_trials if max_trials is not None else 32 * count
    for _ in range(trials):
        if len(pool) >= max(count, 2):
            break
        t = code.words[rng.randrange(len(code))]
        cand = CodeMap(tuple(range(1, n + 1)), t)
        if apply_codemap(cand, code) == code:
            pool.append(cand)
    out = []
    for _ in range(count):
        m = pool[rng.randrange(len(pool))]
        for _ in range(rng.randrange(3)):
            m = m.compose(pool[rng.randrange(len(pool))])
        out.append(m)
    return out
