# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the hot kernels (same contracts as ``_pykern``)."""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.string cimport memset

from mdgcodes.errors import InvalidGraphError

cnp.import_array()

BACKEND_NAME = "c"

ctypedef unsigned long long u64

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define MDG_POPCNT(x) __builtin_popcountll(x)
    #define MDG_CTZ(x) __builtin_ctzll(x)
    #else
    static int MDG_POPCNT(unsigned long long x)
    { int c = 0; while (x) { x &= x - 1; c++; } return c; }
    static int MDG_CTZ(unsigned long long x)
    { int c = 0; while (!(x & 1)) { x >>= 1; c++; } return c; }
    #endif
    """
    int MDG_POPCNT(u64 x) nogil
    int MDG_CTZ(u64 x) nogil


cdef inline long long _choose3(long long k) nogil:
    # C(k, 3)
    if k < 3:
        return 0
    return k * (k - 1) * (k - 2) // 6


cdef inline int _and_popcount(const u64 *a, const u64 *b, int nw) nogil:
    cdef int w, c = 0
    for w in range(nw):
        c += MDG_POPCNT(a[w] & b[w])
    return c


cdef inline bint _and_any(const u64 *a, const u64 *b, int nw) nogil:
    cdef int w
    for w in range(nw):
        if a[w] & b[w]:
            return True
    return False


def recover_distance_matrix(object packed_in, int n):
    """Distance matrix from adjacency; see the NumPy backend for the rules.

    Runs source by source (the NumPy backend runs stage by stage); both
    orders see the same censuses, so errors and results agree.
    """
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] packed = \
        np.ascontiguousarray(packed_in, dtype=np.uint64)
    cdef int vcount = packed.shape[0]
    cdef int nw = packed.shape[1]
    cdef cnp.ndarray[cnp.int16_t, ndim=2, mode="c"] dist = \
        np.full((vcount, vcount), -1, dtype=np.int16)
    cdef const u64 *adj = <const u64 *> &packed[0, 0]
    cdef cnp.int16_t *dp = &dist[0, 0]
    cdef u64 *prev_set
    cdef u64 *cur_set
    cdef u64 *next_set
    cdef u64 *unresolved
    cdef u64 *swap
    cdef u64 word, low
    cdef int x, z, w, i, c
    cdef long long hi, lo4
    cdef int err_i = 0, err_z = -1, err_c = 0
    cdef long long err_hi = 0
    cdef int err_kind = 0  # 1 = not exact, 2 = between bounds, 3 = unresolved

    cdef u64 *buf = <u64 *> malloc(4 * nw * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    prev_set = buf
    cur_set = buf + nw
    next_set = buf + 2 * nw
    unresolved = buf + 3 * nw

    try:
        for x in range(vcount):
            dp[x * vcount + x] = 0
            memset(prev_set, 0, nw * sizeof(u64))
            for w in range(nw):
                cur_set[w] = adj[x * nw + w]
                unresolved[w] = ~(cur_set[w])
            # trim the tail beyond vcount and drop the source itself
            if vcount & 63:
                unresolved[nw - 1] &= (<u64> 1 << (vcount & 63)) - 1
            unresolved[x >> 6] &= ~(<u64> 1 << (x & 63))
            for w in range(nw):
                word = cur_set[w]
                while word:
                    z = (w << 6) + MDG_CTZ(word)
                    word &= word - 1
                    dp[x * vcount + z] = 4
            i = 4
            while i <= n - 2:
                if not _any_words(unresolved, nw):
                    break
                hi = _choose3(i + 2)
                lo4 = _choose3(i + 4)
                memset(next_set, 0, nw * sizeof(u64))
                for w in range(nw):
                    word = unresolved[w]
                    while word:
                        low = word & (~word + 1)
                        z = (w << 6) + MDG_CTZ(word)
                        word &= word - 1
                        if _and_any(adj + z * nw, prev_set, nw):
                            next_set[w] |= low
                            continue
                        c = _and_popcount(adj + z * nw, cur_set, nw)
                        if c >= hi:
                            if c != hi:
                                err_kind = 1
                                err_i = i
                                err_z = z
                                err_c = c
                                err_hi = hi
                                break
                            next_set[w] |= low
                        elif 4 * <long long> c > lo4:
                            err_kind = 2
                            err_i = i
                            err_z = z
                            err_c = c
                            break
                    if err_kind:
                        break
                if err_kind:
                    break
                for w in range(nw):
                    word = next_set[w]
                    unresolved[w] &= ~word
                    while word:
                        z = (w << 6) + MDG_CTZ(word)
                        word &= word - 1
                        dp[x * vcount + z] = <cnp.int16_t> (i + 2)
                swap = prev_set
                prev_set = cur_set
                cur_set = next_set
                next_set = swap
                i += 2
            if err_kind:
                break
            if _any_words(unresolved, nw):
                err_kind = 3
                for w in range(nw):
                    if unresolved[w]:
                        err_z = (w << 6) + MDG_CTZ(unresolved[w])
                        break
                break
    finally:
        free(buf)

    if err_kind == 1:
        raise InvalidGraphError(
            "not a valid extended-perfect MDG: neighbor count above threshold "
            "but not exact",
            source=x, iteration=err_i, vertex=err_z, count=err_c, expected=int(err_hi),
        )
    if err_kind == 2:
        raise InvalidGraphError(
            "not a valid extended-perfect MDG: neighbor count strictly between "
            "bounds",
            source=x, iteration=err_i, vertex=err_z, count=err_c,
        )
    if err_kind == 3:
        raise InvalidGraphError(
            "not a valid extended-perfect MDG: unresolved pair after all stages",
            source=x, vertex=err_z,
        )
    return dist


cdef inline bint _any_words(const u64 *a, int nw) nogil:
    cdef int w
    for w in range(nw):
        if a[w]:
            return True
    return False


def common_neighbor_matrix(object packed_in):
    """|N(u) ∩ N(v)| for all pairs; the diagonal holds degrees."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] packed = \
        np.ascontiguousarray(packed_in, dtype=np.uint64)
    cdef int vcount = packed.shape[0]
    cdef int nw = packed.shape[1]
    cdef cnp.ndarray[cnp.int16_t, ndim=2, mode="c"] out = \
        np.zeros((vcount, vcount), dtype=np.int16)
    cdef const u64 *adj = <const u64 *> &packed[0, 0]
    cdef cnp.int16_t *op = &out[0, 0]
    cdef int i, j
    cdef short c
    with nogil:
        for i in range(vcount):
            for j in range(i, vcount):
                c = <short> _and_popcount(adj + i * nw, adj + j * nw, nw)
                op[i * vcount + j] = c
                op[j * vcount + i] = c
    return out


cdef int _expand(const u64 *rows, int vcount, int nw, int target,
                 u64 *cand, u64 *excl, u64 *scratch, int depth,
                 int *members, list out) except -1:
    """Branch on (cand, excl) at stack slice ``scratch`` for child sets."""
    cdef int w, v, u, c, k, best, pivot, rlen = depth
    cdef u64 word, low
    cdef u64 *child_cand = scratch
    cdef u64 *child_excl = scratch + nw
    cdef bint dropped = True
    # eager filter: drop candidates that cannot reach the target
    while dropped:
        dropped = False
        for w in range(nw):
            word = cand[w]
            while word:
                low = word & (~word + 1)
                v = (w << 6) + MDG_CTZ(word)
                word &= word - 1
                if rlen + 1 + _and_popcount(cand, rows + v * nw, nw) < target:
                    cand[w] &= ~low
                    dropped = True
    c = 0
    for w in range(nw):
        c += MDG_POPCNT(cand[w])
    if rlen + c < target:
        return 0
    if c == 0:
        if not _any_words(excl, nw):
            found = [0] * rlen
            for k in range(rlen):
                found[k] = members[k]
            found.sort()
            out.append(tuple(found))
        return 0
    best = -1
    pivot = -1
    for w in range(nw):
        word = cand[w] | excl[w]
        while word:
            u = (w << 6) + MDG_CTZ(word)
            word &= word - 1
            c = _and_popcount(cand, rows + u * nw, nw)
            if c > best:
                best = c
                pivot = u
    for w in range(nw):
        word = cand[w] & ~rows[pivot * nw + w]
        while word:
            low = word & (~word + 1)
            v = (w << 6) + MDG_CTZ(word)
            word &= word - 1
            for u in range(nw):
                child_cand[u] = cand[u] & rows[v * nw + u]
                child_excl[u] = excl[u] & rows[v * nw + u]
            members[rlen] = v
            _expand(rows, vcount, nw, target, child_cand, child_excl,
                    scratch + 2 * nw, rlen + 1, members, out)
            cand[w] &= ~low
            excl[w] |= low
    return 0


def cliques_at_least(object packed_in, int target):
    """All maximal cliques of size >= target, ascending tuples in lex order."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=2, mode="c"] packed = \
        np.ascontiguousarray(packed_in, dtype=np.uint64)
    cdef int vcount = packed.shape[0]
    cdef int nw = packed.shape[1]
    cdef const u64 *rows = <const u64 *> &packed[0, 0]
    cdef u64 *scratch = <u64 *> malloc((vcount + 2) * 2 * nw * sizeof(u64))
    cdef int *members = <int *> malloc((vcount + 1) * sizeof(int))
    cdef u64 *cand
    cdef u64 *excl
    cdef int w
    if scratch == NULL or members == NULL:
        free(scratch)
        free(members)
        raise MemoryError()
    out = []
    cand = scratch
    excl = scratch + nw
    try:
        for w in range(nw):
            cand[w] = <u64> 0 - 1
            excl[w] = 0
        if vcount & 63:
            cand[nw - 1] = (<u64> 1 << (vcount & 63)) - 1
        _expand(rows, vcount, nw, target, cand, excl, scratch + 2 * nw, 0,
                members, out)
    finally:
        free(scratch)
        free(members)
    out.sort()
    return out
