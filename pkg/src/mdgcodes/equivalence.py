"""Deciding whether two codes are permutation-plus-translation equivalent.

Cheap invariants (span rank, distance distribution) settle most unequal
pairs.  The witness search normalizes both codes to contain zero, then maps
coordinates under two kinds of pruning: coordinates may only map within
equal-profile classes (incidence and co-occurrence counts over the minimum
weight layer), and every minimum-weight word with all-but-one coordinate
mapped forces its completion through the unique matching word on the other
side — the layers of the codes at hand are Steiner, so that propagation
collapses the permutation search to a handful of decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .words import Code, CodeMap, Word, apply_codemap, pairwise_distances


@dataclass(frozen=True)
class EquivResult:
    status: str  # "equivalent" | "inequivalent" | "undecided"
    witness: Optional[CodeMap]
    certificate: dict

    def __post_init__(self):
        if self.status not in ("equivalent", "inequivalent", "undecided"):
            raise ValueError(f"bad status {self.status!r}")


def rank_invariant(code: Code) -> int:
    """Dimension of the F2 span after translating the first word to zero.

    Translation-normalized, so it is invariant under the full map action;
    the choice of translating word does not matter (any difference of two
    codewords already lies in the span).
    """
    if len(code) == 0:
        return 0
    x0 = code.words[0].bits
    pivots: dict[int, int] = {}
    for w in code:
        v = w.bits ^ x0
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                break
    return len(pivots)


def _distance_histogram(code: Code) -> tuple[int, ...]:
    if len(code) < 2:
        return ()
    dm = pairwise_distances(code)
    iu = np.triu_indices(len(code), 1)
    return tuple(np.bincount(dm[iu], minlength=code.length + 1).tolist())


def _weight_histogram(bits_set, n: int) -> tuple[int, ...]:
    out = [0] * (n + 1)
    for b in bits_set:
        out[b.bit_count()] += 1
    return tuple(out)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self) -> bool:
        self.left -= 1
        return self.left >= 0


class _OutOfBudget(Exception):
    pass


class _LayerStructure:
    """Minimum-weight layer of a zero-containing code, prepared for matching."""

    def __init__(self, words: set, n: int):
        self.n = n
        nonzero = [b for b in words if b]
        minw = min(b.bit_count() for b in nonzero)
        self.blocks = sorted(
            tuple(i + 1 for i in range(n) if b >> i & 1)
            for b in nonzero
            if b.bit_count() == minw
        )
        self.k = minw
        self.block_set = {frozenset(b) for b in self.blocks}
        self.by_coord = [[] for _ in range(n + 1)]
        for bi, block in enumerate(self.blocks):
            for c in block:
                self.by_coord[c].append(bi)
        self.by_subset: dict[frozenset, list[tuple[int, ...]]] = {}
        for block in self.blocks:
            for drop in block:
                key = frozenset(c for c in block if c != drop)
                self.by_subset.setdefault(key, []).append(block)
        inc = [len(self.by_coord[c]) for c in range(n + 1)]
        cooc = np.zeros((n + 1, n + 1), dtype=np.int32)
        for block in self.blocks:
            for a in block:
                for b in block:
                    if a != b:
                        cooc[a, b] += 1
        self.cooc = cooc
        self.profile = {
            c: (inc[c], tuple(sorted(int(cooc[c, d]) for d in range(1, n + 1) if d != c)))
            for c in range(1, n + 1)
        }


def _propagate(la: _LayerStructure, lb: _LayerStructure, sigma, used, start_coords, trail):
    """Close sigma under forced block completions; False on contradiction."""
    queue = list(start_coords)
    while queue:
        c = queue.pop()
        for bi in la.by_coord[c]:
            block = la.blocks[bi]
            unassigned = [d for d in block if sigma[d] == 0]
            if len(unassigned) > 1:
                continue
            if not unassigned:
                image = frozenset(sigma[d] for d in block)
                if image not in lb.block_set:
                    return False
                continue
            key = frozenset(sigma[d] for d in block if d != unassigned[0])
            targets = lb.by_subset.get(key)
            if not targets:
                return False
            if len(targets) > 1:
                continue  # ambiguous: leave to the decision search
            rest = [e for e in targets[0] if e not in key]
            if len(rest) != 1:
                return False
            d, e = unassigned[0], rest[0]
            if used[e] or la.profile[d] != lb.profile[e]:
                return False
            sigma[d] = e
            used[e] = True
            trail.append(d)
            queue.append(d)
    return True


def _match_layers(la: _LayerStructure, lb: _LayerStructure, budget: _Budget):
    """Yield coordinate permutations (as sigma arrays) matching the layers."""
    n = la.n
    classes_a: dict = {}
    classes_b: dict = {}
    for c in range(1, n + 1):
        classes_a.setdefault(la.profile[c], []).append(c)
        classes_b.setdefault(lb.profile[c], []).append(c)
    if {p: len(v) for p, v in classes_a.items()} != {p: len(v) for p, v in classes_b.items()}:
        return
    order = sorted(range(1, n + 1), key=lambda c: (len(classes_a[la.profile[c]]), c))
    sigma = [0] * (n + 1)
    used = [False] * (n + 1)

    def consistent(c: int, e: int) -> bool:
        for d in range(1, n + 1):
            if sigma[d] and la.cooc[c, d] != lb.cooc[e, sigma[d]]:
                return False
        return True

    def descend(pos: int):
        while pos < n and sigma[order[pos]] != 0:
            pos += 1
        if pos == n:
            yield sigma
            return
        c = order[pos]
        for e in classes_b.get(la.profile[c], ()):
            if used[e] or not consistent(c, e):
                continue
            if not budget.spend():
                raise _OutOfBudget()
            trail = [c]
            sigma[c] = e
            used[e] = True
            if _propagate(la, lb, sigma, used, [c], trail):
                yield from descend(pos + 1)
            for d in trail:
                used[sigma[d]] = False
                sigma[d] = 0

    yield from descend(0)


def find_equivalence(
    c1: Code, c2: Code, hint_translation: Optional[Word] = None, budget: int = 2_000_000
) -> EquivResult:
    """Witnessed decision of code equivalence.

    ``hint_translation`` is the conjectured image in c2 of c1's first stored
    word; it is tried first but all candidates still follow, so a wrong hint
    costs time, never correctness.  Every returned witness is re-verified by
    applying it; a blown node budget yields status "undecided", never a
    wrong answer.
    """
    if c1.length != c2.length:
        return EquivResult(
            "inequivalent", None, {"lengths": (c1.length, c2.length)}
        )
    if len(c1) != len(c2):
        return EquivResult("inequivalent", None, {"sizes": (len(c1), len(c2))})
    n = c1.length
    if len(c1) == 0:
        return EquivResult("equivalent", CodeMap.identity(n), {"empty": True})
    r1, r2 = rank_invariant(c1), rank_invariant(c2)
    if r1 != r2:
        return EquivResult("inequivalent", None, {"ranks": (r1, r2)})
    if len(c1) == 1:
        m = CodeMap(tuple(range(1, n + 1)), c1.words[0] ^ c2.words[0])
        return EquivResult("equivalent", m, {"singleton": True})
    h1, h2 = _distance_histogram(c1), _distance_histogram(c2)
    if h1 != h2:
        return EquivResult(
            "inequivalent", None, {"distance_distributions": (h1, h2)}
        )

    x0 = c1.words[0]
    a_bits = {w.bits ^ x0.bits for w in c1}
    a_hist = _weight_histogram(a_bits, n)
    layer_a = _LayerStructure(a_bits, n)
    candidates = []
    if hint_translation is not None:
        if hint_translation.length != n:
            raise ValueError("hint translation has the wrong length")
        candidates.append(hint_translation.bits)
    candidates.extend(
        w.bits for w in c2.words if hint_translation is None or w.bits != hint_translation.bits
    )
    nodes = _Budget(budget)
    tried = 0
    try:
        for t in candidates:
            b_bits = {w.bits ^ t for w in c2}
            if 0 not in b_bits or _weight_histogram(b_bits, n) != a_hist:
                continue
            tried += 1
            layer_b = _LayerStructure(b_bits, n)
            for sigma in _match_layers(layer_a, layer_b, nodes):
                perm = tuple(sigma[1:])
                m = CodeMap(perm, Word.zero(n))
                if {m.permute_bits(a) for a in a_bits} != b_bits:
                    continue
                witness = CodeMap(perm, Word(n, t ^ m.permute_bits(x0.bits)))
                if apply_codemap(witness, c1) == c2:
                    return EquivResult(
                        "equivalent",
                        witness,
                        {"translation": str(Word(n, t)), "nodes": budget - nodes.left},
                    )
    except _OutOfBudget:
        return EquivResult(
            "undecided", None, {"nodes": budget, "translations_tried": tried}
        )
    return EquivResult(
        "inequivalent",
        None,
        {
            "ranks": (r1, r2),
            "translations_tried": tried,
            "nodes": budget - nodes.left,
        },
    )
