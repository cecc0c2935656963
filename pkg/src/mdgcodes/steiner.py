"""Quadruple systems seen through block graphs.

The neighborhood of a vertex x in an extended-code MDG carries a Steiner
quadruple system: each neighbor y stands for the 4-set where x and y differ.
Distances 4 and 6 between neighbors mean their 4-sets share 2 or 1 points,
distance 8 means disjoint — so the block-intersection graph is computable
from recovered distances alone, and the blocks through one point form the
big cliques that identify coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidGraphError, UnsupportedParameterError
from .mdgraph import MDGraph
from .words import ValidationResult
from .distances import DistanceMatrix, UNRESOLVED


@dataclass(frozen=True)
class SQS:
    """Point set 1..v plus 4-element blocks (sorted tuples)."""

    v: int
    blocks: tuple[tuple[int, ...], ...]


def validate_sqs(system: SQS) -> ValidationResult:
    """Every 3-subset of points must lie in exactly one block."""
    v = system.v
    if v < 4:
        return ValidationResult(False, f"point count {v} too small")
    want_blocks = v * (v - 1) * (v - 2) // 24
    if len(system.blocks) != want_blocks:
        return ValidationResult(
            False, f"{len(system.blocks)} blocks, expected {want_blocks}"
        )
    seen = {}
    for b in system.blocks:
        if len(b) != 4 or len(set(b)) != 4 or not all(1 <= p <= v for p in b):
            return ValidationResult(False, f"bad block {b}")
        for t in combinations(sorted(b), 3):
            if t in seen:
                return ValidationResult(False, f"triple {t} in two blocks")
            seen[t] = b
    missing = v * (v - 1) * (v - 2) // 6 - len(seen)
    if missing:
        return ValidationResult(False, f"{missing} triples uncovered")
    per_point = v * (v - 1) * (v - 2) // 24 * 4 // v
    counts = [0] * (v + 1)
    for b in system.blocks:
        for p in b:
            counts[p] += 1
    if any(c != per_point for c in counts[1:]):
        return ValidationResult(False, "unbalanced point occurrences")
    return ValidationResult(True)


@dataclass(frozen=True)
class BlockGraph:
    """Intersection graph over block indices.

    ``block_of[i]`` is what index i stands for: the neighbor vertex id when
    built from an MDG neighborhood, or the 4-tuple when built from an SQS.
    """

    graph: MDGraph
    block_of: tuple


def neighborhood_block_graph(graph: MDGraph, dmatrix: DistanceMatrix, x: int) -> BlockGraph:
    """Block graph of the quadruple system carried by N(x).

    Edge between two neighbors iff their recovered distance is 4 or 6
    (intersecting difference 4-sets).  All pairwise distances among N(x)
    must be resolved.
    """
    nbrs = graph.neighbors(x)
    ids = np.array(nbrs, dtype=np.int64)
    sub = dmatrix.submatrix(ids)
    unresolved = np.triu(sub == UNRESOLVED, 1)
    if unresolved.any():
        a, b = (int(i) for i in np.argwhere(unresolved)[0])
        raise InvalidGraphError(
            "unresolved distance between neighbors", x=x, u=nbrs[a], v=nbrs[b]
        )
    iu, ju = np.nonzero(np.triu((sub == 4) | (sub == 6), 1))
    edges = list(zip(iu.tolist(), ju.tolist()))
    return BlockGraph(MDGraph(len(nbrs), edges), tuple(nbrs))


def block_graph_of_sqs(system: SQS) -> BlockGraph:
    """Intersection graph straight from known blocks (oracle/cross-check use)."""
    edges = []
    for i, j in combinations(range(len(system.blocks)), 2):
        if set(system.blocks[i]) & set(system.blocks[j]):
            edges.append((i, j))
    return BlockGraph(MDGraph(len(system.blocks), edges), tuple(system.blocks))


def point_clique_size(v: int) -> int:
    return (v - 1) * (v - 2) // 6


def enumerate_point_cliques(bgraph: BlockGraph, v: int) -> list[tuple[int, ...]]:
    """The v cliques of all-blocks-through-one-point, in lexicographic order.

    Point cliques have size (v-1)(v-2)/6; for v >= 16 that exceeds every
    common-point-free clique, so they are exactly the maximal cliques at or
    above that size.  The full census is checked: exactly v cliques, each of
    exactly that size, every block index in exactly 4 of them, and each
    returned clique maximal.
    """
    if v < 16:
        raise UnsupportedParameterError(
            f"point-clique separation needs v >= 16, got {v}"
        )
    target = point_clique_size(v)
    want_blocks = v * (v - 1) * (v - 2) // 24
    b = bgraph.graph.vcount
    if b != want_blocks:
        raise InvalidGraphError(
            "not a valid SQS block graph: wrong block count",
            blocks=b, expected=want_blocks,
        )
    cliques = _kernels.cliques_at_least(bgraph.graph.packed_rows(), target)
    if len(cliques) != v:
        raise InvalidGraphError(
            "not a valid SQS block graph: wrong number of big cliques",
            found=len(cliques), expected=v,
        )
    membership = [0] * b
    for clique in cliques:
        if len(clique) != target:
            raise InvalidGraphError(
                "not a valid SQS block graph: clique of wrong size",
                size=len(clique), expected=target,
            )
        for t in clique:
            membership[t] += 1
    if any(c != 4 for c in membership):
        t = next(i for i, c in enumerate(membership) if c != 4)
        raise InvalidGraphError(
            "not a valid SQS block graph: block not in exactly 4 point cliques",
            block=t, count=membership[t],
        )
    rows = bgraph.graph.bit_rows()
    full = (1 << b) - 1
    for clique in cliques:
        common = full
        mask = 0
        for t in clique:
            common &= rows[t] | (1 << t)
            mask |= 1 << t
        if common & ~mask:
            raise InvalidGraphError(
                "not a valid SQS block graph: returned clique is not maximal",
                extendable_by=(common & ~mask).bit_length() - 1,
            )
    return cliques


def sqs_from_point_cliques(cliques: Sequence[tuple[int, ...]], v: int) -> SQS:
    """Read the design back out: point i+1 = clique i, block of index t = the
    4 points whose cliques contain t."""
    b = v * (v - 1) * (v - 2) // 24
    blocks = [[] for _ in range(b)]
    for i, clique in enumerate(cliques):
        for t in clique:
            blocks[t].append(i + 1)
    return SQS(v, tuple(tuple(sorted(bl)) for bl in blocks))


@dataclass(frozen=True)
class SampledClique:
    size: int
    point_type: bool


@dataclass(frozen=True)
class CliqueBoundReport:
    """Evidence that common-point-free maximal cliques stay small.

    ``envelope`` is max(2v-3, 3v/2+5, 31), an upper bound for cliques with
    no common point; it must sit strictly below the point-clique size.
    ``pair_blocks`` is the observed |K_p ∩ K_q| over point-clique pairs,
    which must equal (v-2)/2.
    """

    v: int
    bound: int
    envelope: int
    pair_blocks: int
    samples: tuple[SampledClique, ...]
    ok: bool


def check_clique_bound(
    bgraph: BlockGraph,
    v: int,
    point_cliques: Optional[Sequence[tuple[int, ...]]] = None,
    samples: int = 20,
    seed: int = 0,
) -> CliqueBoundReport:
    """Sample random maximal cliques and verify the size dichotomy."""
    if point_cliques is None:
        point_cliques = enumerate_point_cliques(bgraph, v)
    bound = point_clique_size(v)
    envelope = max(2 * v - 3, 3 * v // 2 + 5, 31)
    ok = envelope < bound
    clique_sets = [frozenset(c) for c in point_cliques]
    inter_sizes = {
        len(a & b) for a, b in combinations(clique_sets, 2)
    }
    pair_blocks = inter_sizes.pop() if len(inter_sizes) == 1 else -1
    if pair_blocks != (v - 2) // 2:
        ok = False
    rows = bgraph.graph.bit_rows()
    b = bgraph.graph.vcount
    rng = random.Random(seed)
    found = []
    for _ in range(samples):
        start = rng.randrange(b)
        members = [start]
        cand = rows[start]
        while cand:
            choices = []
            m = cand
            while m:
                low = m & -m
                choices.append(low.bit_length() - 1)
                m ^= low
            pick = choices[rng.randrange(len(choices))]
            members.append(pick)
            cand &= rows[pick]
        mset = frozenset(members)
        point_type = any(mset <= cs for cs in clique_sets)
        if point_type:
            if len(members) != bound:
                ok = False
        elif len(members) >= bound:
            ok = False
        found.append(SampledClique(len(members), point_type))
    return CliqueBoundReport(v, bound, envelope, pair_blocks, tuple(found), ok)
