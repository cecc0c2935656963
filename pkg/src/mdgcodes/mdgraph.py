"""Minimum distance graphs: construction from codes, shuffling, DIMACS I/O.

A graph is immutable once built.  Adjacency is kept three ways because the
consumers differ: sorted neighbor lists (iteration), Python-int bit rows
(small set algebra), and a packed uint64 matrix (the compiled kernels).
"""

from __future__ import annotations

import random
from typing import Iterable, Optional

import numpy as np

from .errors import FormatError
from .words import Code, pairwise_distances


class MDGraph:
    """Undirected loop-free graph with vertex ids 0..vcount-1."""

    __slots__ = ("vcount", "_edges", "_adj", "_bit_rows", "_packed", "note")

    def __init__(self, vcount: int, edges: Iterable[tuple[int, int]], note: Optional[str] = None):
        if vcount < 1:
            raise ValueError(f"vcount must be positive, got {vcount}")
        seen = set()
        adj = [[] for _ in range(vcount)]
        for u, v in edges:
            if not (0 <= u < vcount and 0 <= v < vcount):
                raise ValueError(f"edge ({u},{v}) out of range for {vcount} vertices")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "vcount", vcount)
        object.__setattr__(self, "_edges", frozenset(seen))
        object.__setattr__(self, "_adj", tuple(tuple(sorted(ns)) for ns in adj))
        object.__setattr__(self, "_bit_rows", None)
        object.__setattr__(self, "_packed", None)
        object.__setattr__(self, "note", note)

    def __setattr__(self, name, value):
        raise AttributeError("MDGraph is immutable")

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted (u, v) pairs with u < v."""
        return sorted(self._edges)

    def edge_set(self) -> frozenset:
        return self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(ns) for ns in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edges

    def bit_rows(self) -> tuple[int, ...]:
        """Adjacency as Python ints, bit v of row u set iff (u,v) is an edge."""
        if self._bit_rows is None:
            rows = [0] * self.vcount
            for u, v in self._edges:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            object.__setattr__(self, "_bit_rows", tuple(rows))
        return self._bit_rows

    def packed_rows(self) -> np.ndarray:
        """Adjacency as a (vcount, ceil(vcount/64)) uint64 matrix, little-endian
        bit order: vertex v is bit v%64 of word v//64."""
        if self._packed is None:
            dense = self.dense_adjacency()
            packed8 = np.packbits(dense, axis=1, bitorder="little")
            width = 8 * ((packed8.shape[1] + 7) // 8)
            if packed8.shape[1] != width:
                pad = np.zeros((self.vcount, width - packed8.shape[1]), dtype=np.uint8)
                packed8 = np.concatenate([packed8, pad], axis=1)
            packed = packed8.view(np.uint64)
            packed.flags.writeable = False
            object.__setattr__(self, "_packed", packed)
        return self._packed

    def dense_adjacency(self) -> np.ndarray:
        out = np.zeros((self.vcount, self.vcount), dtype=bool)
        if self._edges:
            e = np.array(sorted(self._edges), dtype=np.int64)
            out[e[:, 0], e[:, 1]] = True
            out[e[:, 1], e[:, 0]] = True
        return out

    def is_regular(self) -> Optional[int]:
        """The common degree, or None if degrees differ."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, MDGraph):
            return NotImplemented
        return self.vcount == other.vcount and self._edges == other._edges

    __hash__ = None

    def __repr__(self) -> str:
        return f"MDGraph(vcount={self.vcount}, edges={len(self._edges)})"


def build_mdg(code: Code) -> MDGraph:
    """Graph on the code's stored order with edges at the minimum distance."""
    if len(code) < 2:
        raise ValueError("minimum distance graph needs at least two words")
    dm = pairwise_distances(code)
    np.fill_diagonal(dm, np.iinfo(np.int16).max)
    d = int(dm.min())
    iu, ju = np.nonzero(np.triu(dm == d, 1))
    edges = list(zip(iu.tolist(), ju.tolist()))
    return MDGraph(len(code), edges, note=f"mdg d={d}")


def shuffle_graph(graph: MDGraph, seed: int) -> tuple[MDGraph, list[int]]:
    """Relabel vertices by a seeded random permutation.

    Returns the relabeled graph and the permutation as a list p with
    p[old_id] = new_id.
    """
    rng = random.Random(seed)
    perm = list(range(graph.vcount))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in graph.edges()]
    return MDGraph(graph.vcount, edges, note=graph.note), perm


# ---------------------------------------------------------------------------
# DIMACS-like format: `c ` comments, one `p edge <V> <E>` header, then E lines
# `e <u> <v>` with 1-based ids and u < v.  Writing is canonical (sorted edges,
# no comments), so write(read(write(G))) is byte-identical.


def format_dimacs(graph: MDGraph) -> str:
    lines = [f"p edge {graph.vcount} {graph.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str, path=None) -> MDGraph:
    vcount = None
    ecount = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line == "c" or line.startswith("c "):
            continue
        if not line:
            raise FormatError("blank line", line=lineno, path=path)
        parts = line.split()
        if parts[0] == "p":
            if vcount is not None:
                raise FormatError("second p line", line=lineno, path=path)
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError(f"bad header {line!r}", line=lineno, path=path)
            try:
                vcount, ecount = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"bad header {line!r}", line=lineno, path=path)
            if vcount < 1 or ecount < 0:
                raise FormatError(f"bad header counts {line!r}", line=lineno, path=path)
            continue
        if parts[0] == "e":
            if vcount is None:
                raise FormatError("edge before p line", line=lineno, path=path)
            if len(parts) != 3:
                raise FormatError(f"bad edge line {line!r}", line=lineno, path=path)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"bad edge line {line!r}", line=lineno, path=path)
            if not (1 <= u <= vcount and 1 <= v <= vcount):
                raise FormatError(f"vertex out of range in {line!r}", line=lineno, path=path)
            if u >= v:
                raise FormatError(f"edge must have u < v: {line!r}", line=lineno, path=path)
            if (u, v) in seen:
                raise FormatError(f"duplicate edge {line!r}", line=lineno, path=path)
            seen.add((u, v))
            edges.append((u - 1, v - 1))
            continue
        raise FormatError(f"unrecognized line {line!r}", line=lineno, path=path)
    if vcount is None:
        raise FormatError("missing p line", path=path)
    if len(edges) != ecount:
        raise FormatError(f"header says {ecount} edges, file has {len(edges)}", path=path)
    return MDGraph(vcount, edges)


def read_dimacs(path) -> MDGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_dimacs(fh.read(), path=path)


def write_dimacs(graph: MDGraph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_dimacs(graph))
