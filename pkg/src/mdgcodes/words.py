"""Binary words, codes, and the (permutation, translation) maps acting on them.

Coordinates are 1-based everywhere: coordinate ``i`` of a word is bit ``i-1``
of its integer representation, and the string form lists coordinates left to
right, so ``Word.from_string("1100")`` has support ``(1, 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import FormatError


@dataclass(frozen=True)
class Word:
    """Fixed-length binary word; immutable."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"word length must be positive, got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError(f"bits 0x{self.bits:x} out of range for length {self.length}")

    @classmethod
    def zero(cls, length: int) -> "Word":
        return cls(length, 0)

    @classmethod
    def from_string(cls, s: str) -> "Word":
        if not s or any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "Word":
        bits = 0
        for c in support:
            if not 1 <= c <= length:
                raise ValueError(f"coordinate {c} out of range 1..{length}")
            bits |= 1 << (c - 1)
        return cls(length, bits)

    def to_string(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __str__(self) -> str:
        return self.to_string()

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """1-based coordinates carrying a 1."""
        return tuple(i + 1 for i in range(self.length) if self.bits >> i & 1)

    def bit(self, coord: int) -> int:
        if not 1 <= coord <= self.length:
            raise ValueError(f"coordinate {coord} out of range 1..{self.length}")
        return self.bits >> (coord - 1) & 1

    def complement(self) -> "Word":
        return Word(self.length, self.bits ^ ((1 << self.length) - 1))

    def __xor__(self, other: "Word") -> "Word":
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} != {other.length}")
        return Word(self.length, self.bits ^ other.bits)


def hamming_distance(a: Word, b: Word) -> int:
    """Number of coordinates where the two words differ."""
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")
    return (a.bits ^ b.bits).bit_count()


class Code:
    """A finite set of distinct words of one length, kept in insertion order.

    Equality is set-semantic (same length, same set of words); the stored
    order only fixes reproducible vertex ids for derived graphs.
    """

    __slots__ = ("length", "words", "_set", "_index")

    def __init__(self, length: int, words: Iterable[Word]):
        if length < 1:
            raise ValueError(f"code length must be positive, got {length}")
        ws = tuple(words)
        for w in ws:
            if w.length != length:
                raise ValueError(f"word of length {w.length} in code of length {length}")
        index = {w: i for i, w in enumerate(ws)}
        if len(index) != len(ws):
            raise ValueError("duplicate words in code")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "words", ws)
        object.__setattr__(self, "_set", frozenset(ws))
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Code is immutable")

    @classmethod
    def from_ints(cls, length: int, bits: Iterable[int]) -> "Code":
        return cls(length, (Word(length, b) for b in bits))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return w in self._set

    def index(self, w: Word) -> int:
        return self._index[w]

    @property
    def word_set(self) -> frozenset:
        return self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.length == other.length and self._set == other._set

    __hash__ = None

    def __repr__(self) -> str:
        return f"Code(length={self.length}, size={len(self.words)})"


@dataclass(frozen=True)
class CodeMap:
    """Coordinate permutation plus translation; acts as x -> trans ^ perm(x).

    ``perm[i-1]`` is the image of coordinate ``i``: the input's coordinate
    ``i`` lands on coordinate ``perm[i-1]`` of the output.
    """

    perm: tuple[int, ...]
    trans: Word

    def __post_init__(self):
        n = self.trans.length
        if len(self.perm) != n or sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"perm is not a permutation of 1..{n}: {self.perm}")

    @classmethod
    def identity(cls, length: int) -> "CodeMap":
        return cls(tuple(range(1, length + 1)), Word.zero(length))

    @property
    def length(self) -> int:
        return self.trans.length

    def permute_bits(self, bits: int) -> int:
        out = 0
        for i, img in enumerate(self.perm):
            if bits >> i & 1:
                out |= 1 << (img - 1)
        return out

    def apply(self, w: Word) -> Word:
        if w.length != self.length:
            raise ValueError(f"length mismatch: {w.length} != {self.length}")
        return Word(w.length, self.trans.bits ^ self.permute_bits(w.bits))

    def compose(self, other: "CodeMap") -> "CodeMap":
        """Map equal to applying ``other`` first, then ``self``."""
        if self.length != other.length:
            raise ValueError("length mismatch in composition")
        perm = tuple(self.perm[other.perm[i] - 1] for i in range(self.length))
        trans = Word(self.length, self.trans.bits ^ self.permute_bits(other.trans.bits))
        return CodeMap(perm, trans)

    def inverse(self) -> "CodeMap":
        inv = [0] * self.length
        for i, img in enumerate(self.perm):
            inv[img - 1] = i + 1
        m = CodeMap(tuple(inv), Word.zero(self.length))
        return CodeMap(tuple(inv), Word(self.length, m.permute_bits(self.trans.bits)))


def apply_codemap(m: CodeMap, code: Code) -> Code:
    if m.length != code.length:
        raise ValueError(f"length mismatch: map {m.length}, code {code.length}")
    return Code(code.length, (m.apply(w) for w in code))


def pairwise_distances(code: Code) -> np.ndarray:
    """Full symmetric Hamming distance matrix over the code's stored order."""
    n = len(code)
    if code.length <= 64:
        arr = np.array([w.bits for w in code], dtype=np.uint64)
        return np.bitwise_count(arr[:, None] ^ arr[None, :]).astype(np.int16)
    out = np.zeros((n, n), dtype=np.int16)
    for i, a in enumerate(code.words):
        for j in range(i + 1, n):
            d = (a.bits ^ code.words[j].bits).bit_count()
            out[i, j] = out[j, i] = d
    return out


def min_distance(code: Code) -> int:
    if len(code) < 2:
        raise ValueError("minimum distance needs at least two words")
    d = pairwise_distances(code)
    np.fill_diagonal(d, np.iinfo(np.int16).max)
    return int(d.min())


def extend_parity(code: Code) -> Code:
    """Append one coordinate making every word's total weight even."""
    n = code.length
    return Code(n + 1, (Word(n + 1, w.bits | (w.weight & 1) << n) for w in code))


def puncture(code: Code, coord: int) -> Code:
    """Delete one coordinate from every word (first occurrence wins on collision)."""
    if not 1 <= coord <= code.length:
        raise ValueError(f"coordinate {coord} out of range 1..{code.length}")
    low = (1 << (coord - 1)) - 1
    seen = set()
    out = []
    for w in code:
        bits = (w.bits & low) | (w.bits >> coord) << (coord - 1)
        if bits not in seen:
            seen.add(bits)
            out.append(Word(code.length - 1, bits))
    return Code(code.length - 1, out)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_perfect(code: Code) -> ValidationResult:
    """Radius-1 sphere-packing check: min distance >= 3 and |C|*(n+1) = 2^n."""
    n = code.length
    if len(code) == 0:
        return ValidationResult(False, "empty code")
    if len(code) * (n + 1) != 1 << n:
        return ValidationResult(
            False, f"sphere packing fails: {len(code)}*({n}+1) != 2^{n}"
        )
    if len(code) >= 2:
        d = min_distance(code)
        if d < 3:
            return ValidationResult(False, f"minimum distance {d} < 3")
    return ValidationResult(True)


def validate_extended_perfect(code: Code) -> ValidationResult:
    """Even pairwise differences, min distance 4, |C|*2n = 2^n."""
    n = code.length
    if len(code) == 0:
        return ValidationResult(False, "empty code")
    if len(code) * 2 * n != 1 << n:
        return ValidationResult(False, f"cardinality fails: {len(code)}*2*{n} != 2^{n}")
    if len(code) >= 2:
        dm = pairwise_distances(code)
        iu = np.triu_indices(len(code), 1)
        pair_d = dm[iu]
        if (pair_d % 2).any():
            return ValidationResult(False, "odd pairwise distance present")
        d = int(pair_d.min())
        if d != 4:
            return ValidationResult(False, f"minimum distance {d} != 4")
    return ValidationResult(True)


# ---------------------------------------------------------------------------
# Code file format: optional `c ` comment lines, optional `length=<n>` header
# (first non-comment line), then one word per line as a 0/1 string.


def format_code(code: Code) -> str:
    lines = [f"length={code.length}"]
    lines.extend(w.to_string() for w in code)
    return "\n".join(lines) + "\n"


def parse_code(text: str, path=None) -> Code:
    length = None
    words = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line == "c" or line.startswith("c "):
            continue
        if not line:
            raise FormatError("blank line", line=lineno, path=path)
        if length is None and line.startswith("length="):
            try:
                length = int(line[len("length="):])
            except ValueError:
                raise FormatError(f"bad length header {line!r}", line=lineno, path=path)
            if length < 1:
                raise FormatError(f"bad length {length}", line=lineno, path=path)
            continue
        if any(ch not in "01" for ch in line):
            raise FormatError(f"not a 0/1 word: {line!r}", line=lineno, path=path)
        if length is None:
            length = len(line)
        if len(line) != length:
            raise FormatError(
                f"word of length {len(line)}, expected {length}", line=lineno, path=path
            )
        if line in seen:
            raise FormatError(f"duplicate word {line!r}", line=lineno, path=path)
        seen.add(line)
        words.append(Word.from_string(line))
    if length is None:
        raise FormatError("no length header and no words", path=path)
    return Code(length, words)


def read_code(path) -> Code:
    with open(path, "r", encoding="ascii") as fh:
        return parse_code(fh.read(), path=path)


def write_code(code: Code, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_code(code))


def random_codemap(length: int, rng) -> CodeMap:
    """Uniformly random coordinate permutation and translation (test support)."""
    perm = list(range(1, length + 1))
    rng.shuffle(perm)
    trans = Word(length, rng.getrandbits(length))
    return CodeMap(tuple(perm), trans)
