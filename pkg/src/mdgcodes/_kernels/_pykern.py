"""Pure NumPy backend for the hot kernels.

Counting is done in float32 matrix products: every count here is bounded by
the vertex count (< 2^24), so float32 accumulation of 0/1 products is exact.
"""

from __future__ import annotations

from math import comb

import numpy as np

from mdgcodes.errors import InvalidGraphError

BACKEND_NAME = "python"


def _dense(packed: np.ndarray) -> np.ndarray:
    vcount = packed.shape[0]
    u8 = packed.view(np.uint8)
    return np.unpackbits(u8, axis=1, count=vcount, bitorder="little")


def recover_distance_matrix(packed: np.ndarray, n: int) -> np.ndarray:
    """Distances from all sources at once, stages synchronized across sources.

    Stage i resolves distance i+2: an unresolved target is at i+2 if it has a
    neighbor at i-2, or if its count of neighbors at distance i reaches
    C(i+2,3) (then the count must equal it exactly).  Counts strictly inside
    (C(i+4,3)/4, C(i+2,3)) are impossible for a genuine graph and raise.
    """
    vcount = packed.shape[0]
    adj_bool = _dense(packed).astype(bool)
    adj = adj_bool.astype(np.float32)
    dist = np.full((vcount, vcount), -1, dtype=np.int16)
    np.fill_diagonal(dist, 0)
    dist[adj_bool] = 4
    for i in range(4, n - 1, 2):
        unresolved = dist == -1
        if not unresolved.any():
            break
        at_prev = (dist == i - 2).astype(np.float32)
        at_cur = (dist == i).astype(np.float32)
        via_path = unresolved & ((at_prev @ adj) > 0)
        counts = at_cur @ adj
        hi = comb(i + 2, 3)
        lo4 = comb(i + 4, 3)
        via_count = unresolved & ~via_path & (counts >= hi)
        off = via_count & (counts != hi)
        if off.any():
            x, z = (int(a) for a in np.argwhere(off)[0])
            raise InvalidGraphError(
                "not a valid extended-perfect MDG: neighbor count above threshold "
                "but not exact",
                source=x, iteration=i, vertex=z, count=int(counts[x, z]), expected=hi,
            )
        rest = unresolved & ~via_path & ~via_count
        between = rest & (4 * counts > lo4)
        if between.any():
            x, z = (int(a) for a in np.argwhere(between)[0])
            raise InvalidGraphError(
                "not a valid extended-perfect MDG: neighbor count strictly between "
                "bounds",
                source=x, iteration=i, vertex=z, count=int(counts[x, z]),
            )
        dist[via_path | via_count] = i + 2
    leftover = dist == -1
    if leftover.any():
        x, z = (int(a) for a in np.argwhere(leftover)[0])
        raise InvalidGraphError(
            "not a valid extended-perfect MDG: unresolved pair after all stages",
            source=x, vertex=z,
        )
    return dist


def common_neighbor_matrix(packed: np.ndarray) -> np.ndarray:
    """|N(u) ∩ N(v)| for all pairs; the diagonal holds degrees."""
    adj = _dense(packed).astype(np.float32)
    return (adj @ adj).astype(np.int16)


def cliques_at_least(packed: np.ndarray, target: int) -> list[tuple[int, ...]]:
    """All maximal cliques of size >= target, ascending tuples in lex order.

    Branch and bound with pivoting on bitset candidate sets.  Candidates that
    cannot reach the target together with the current clique are dropped
    eagerly; any clique of size >= target survives that filter, and every
    reported set is checked maximal by the caller's census.
    """
    vcount = packed.shape[0]
    rows = [int.from_bytes(packed[i].tobytes(), "little") for i in range(vcount)]
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], cand: int, excl: int) -> None:
        while True:
            dropped = False
            scan = cand
            while scan:
                low = scan & -scan
                v = low.bit_length() - 1
                scan ^= low
                if len(r) + 1 + (cand & rows[v]).bit_count() < target:
                    cand ^= low
                    dropped = True
            if not dropped:
                break
        if len(r) + cand.bit_count() < target:
            return
        if cand == 0:
            if excl == 0:
                out.append(tuple(sorted(r)))
            return
        pivot = -1
        best = -1
        scan = cand | excl
        while scan:
            low = scan & -scan
            u = low.bit_length() - 1
            scan ^= low
            c = (cand & rows[u]).bit_count()
            if c > best:
                best = c
                pivot = u
        ext = cand & ~rows[pivot]
        while ext:
            low = ext & -ext
            v = low.bit_length() - 1
            ext ^= low
            r.append(v)
            expand(r, cand & rows[v], excl & rows[v])
            r.pop()
            cand ^= low
            excl |= low

    expand([], (1 << vcount) - 1, 0)
    out.sort()
    return out
