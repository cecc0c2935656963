"""Generators for the code corpus: Hamming, Vasil'ev, and parity extensions.

All construction is deterministic given (family, parameters, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import UnsupportedParameterError
from .words import Code, Word, extend_parity, validate_perfect


def gen_hamming(m: int) -> Code:
    """The length 2^m - 1 code of words with zero syndrome.

    The syndrome of x is the XOR of the binary column values of its support
    coordinates (column of coordinate i is i itself), so the parity-check
    columns are 1..2^m-1 in ascending order.  Words are stored in ascending
    integer order, which fixes a canonical code.

    Only m in {3, 4} is supported: lengths >= 31 put the ambient space
    (2^26+ words) beyond what this package is sized for.
    """
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    if m > 4:
        raise UnsupportedParameterError(
            f"m={m} gives length {2**m - 1}; lengths >= 31 are unsupported"
        )
    n = (1 << m) - 1
    words = []
    for x in range(1 << n):
        syndrome = 0
        y = x
        while y:
            low = y & -y
            syndrome ^= low.bit_length()
            y ^= low
        if syndrome == 0:
            words.append(Word(n, x))
    return Code(n, words)


@dataclass(frozen=True)
class VasilevSpec:
    """Inputs for the doubling construction: a perfect base code and a bit
    function f on its words (given as an explicit table).

    ``seed`` records how a pseudo-random table was drawn, for provenance.
    """

    base: Code
    f: Mapping[Word, int]
    seed: Optional[int] = None

    def __post_init__(self):
        missing = [w for w in self.base if w not in self.f]
        if missing:
            raise ValueError(f"f is not total over the base code ({len(missing)} missing)")

    @classmethod
    def zero(cls, base: Code) -> "VasilevSpec":
        """f identically 0 — reproduces a linear code from a linear base."""
        return cls(base, {w: 0 for w in base}, seed=None)

    @classmethod
    def seeded(cls, base: Code, seed: int) -> "VasilevSpec":
        """f = indicator of one pseudo-randomly chosen nonzero base word.

        An indicator function is not linear, so the resulting code's span
        rank strictly exceeds the linear one's — a cheap inequivalence
        witness between seeds' outputs and the Hamming code.
        """
        rng = random.Random(seed)
        nonzero = [w for w in base if w.bits != 0]
        chosen = nonzero[rng.randrange(len(nonzero))]
        return cls(base, {w: int(w == chosen) for w in base}, seed=seed)


def gen_vasilev(spec: VasilevSpec) -> Code:
    """Words (u, u ^ y, parity(u) ^ f(y)) for u free and y in the base code.

    Output length is 2n+1 for base length n; coordinates 1..n hold u,
    n+1..2n hold u ^ y, and 2n+1 holds the mixed parity bit.
    """
    base = spec.base
    n = base.length
    if not validate_perfect(base):
        raise ValueError(f"base is not a perfect code: {validate_perfect(base).reason}")
    out = []
    top = 1 << (2 * n)
    for u in range(1 << n):
        pu = u.bit_count() & 1
        for y in base:
            bits = u | (u ^ y.bits) << n | (pu ^ spec.f[y]) * top
            out.append(Word(2 * n + 1, bits))
    return Code(2 * n + 1, out)


def gen_extended(family: str, m: int = 4, seed: int = 0) -> Code:
    """Parity extension of the named generator's output."""
    return extend_parity(gen_family(family, m=m, seed=seed))


def gen_family(family: str, m: int = 4, seed: int = 0) -> Code:
    """Dispatch by family name; the CLI's `gen` subcommand maps onto this.

    Families: hamming, vasilev, ext-hamming, ext-vasilev.  For vasilev, m is
    the target exponent (length 2^m - 1) and the base is the Hamming code of
    length 2^(m-1) - 1; seed draws f.  seed=None-like behavior is not
    offered: pass an integer, generation stays reproducible.
    """
    if family == "hamming":
        return gen_hamming(m)
    if family == "vasilev":
        base = gen_hamming(m - 1)
        return gen_vasilev(VasilevSpec.seeded(base, seed))
    if family == "ext-hamming":
        return gen_extended("hamming", m=m, seed=seed)
    if family == "ext-vasilev":
        return gen_extended("vasilev", m=m, seed=seed)
    raise ValueError(f"unknown family {family!r}")
