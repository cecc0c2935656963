import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdgcodes import (
    Code,
    CodeMap,
    FormatError,
    Word,
    apply_codemap,
    extend_parity,
    format_code,
    hamming_distance,
    min_distance,
    parse_code,
    puncture,
    read_code,
    validate_extended_perfect,
    validate_perfect,
    write_code,
)
from mdgcodes.words import pairwise_distances, random_codemap

words_st = st.integers(min_value=1, max_value=24).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=(1 << n) - 1))
).map(lambda t: Word(*t))


def codemaps_st(n):
    return st.tuples(
        st.permutations(list(range(1, n + 1))),
        st.integers(min_value=0, max_value=(1 << n) - 1),
    ).map(lambda t: CodeMap(tuple(t[0]), Word(n, t[1])))


class TestWord:
    def test_string_round_trip(self):
        w = Word.from_string("1100101")
        assert w.to_string() == "1100101"
        assert w.support() == (1, 2, 5, 7)
        assert w.weight == 4

    def test_leftmost_char_is_coordinate_one(self):
        assert Word.from_string("100").bit(1) == 1
        assert Word.from_string("001").bit(3) == 1

    def test_from_support(self):
        assert Word.from_support(5, [2, 4]) == Word.from_string("01010")
        with pytest.raises(ValueError):
            Word.from_support(5, [6])

    def test_out_of_range_bits(self):
        with pytest.raises(ValueError):
            Word(3, 8)

    def test_complement_and_xor(self):
        w = Word.from_string("0110")
        assert w.complement() == Word.from_string("1001")
        assert (w ^ w).bits == 0

    @given(words_st)
    def test_weight_matches_support(self, w):
        assert w.weight == len(w.support())
        assert Word.from_support(w.length, w.support()) == w

    @given(words_st, words_st)
    def test_distance_symmetric(self, a, b):
        if a.length != b.length:
            with pytest.raises(ValueError):
                hamming_distance(a, b)
        else:
            assert hamming_distance(a, b) == hamming_distance(b, a)
            assert hamming_distance(a, a) == 0


class TestCode:
    def test_set_semantics(self):
        a = Code.from_ints(3, [0, 7])
        b = Code.from_ints(3, [7, 0])
        assert a == b
        assert a.words != b.words

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            Code.from_ints(3, [1, 1])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Code(3, [Word(4, 0)])

    def test_index_and_contains(self):
        c = Code.from_ints(4, [0, 15, 3])
        assert c.index(Word(4, 3)) == 2
        assert Word(4, 15) in c
        assert Word(4, 1) not in c

    def test_pairwise_distances_match_definition(self):
        rng = random.Random(5)
        c = Code.from_ints(9, rng.sample(range(512), 40))
        d = pairwise_distances(c)
        for i, a in enumerate(c.words):
            for j, b in enumerate(c.words):
                assert d[i, j] == hamming_distance(a, b)

    def test_min_distance(self):
        assert min_distance(Code.from_ints(4, [0, 3, 12])) == 2


class TestCodeMap:
    def test_perm_semantics(self):
        # coordinate 1 lands on coordinate 3
        m = CodeMap((3, 1, 2), Word.zero(3))
        assert m.apply(Word.from_string("100")) == Word.from_string("001")

    def test_identity(self):
        m = CodeMap.identity(5)
        w = Word.from_string("10110")
        assert m.apply(w) == w

    def test_non_permutation_rejected(self):
        with pytest.raises(ValueError):
            CodeMap((1, 1, 3), Word.zero(3))

    @settings(max_examples=40)
    @given(codemaps_st(7), codemaps_st(7), st.integers(0, 127))
    def test_compose_is_apply_after(self, m1, m2, bits):
        w = Word(7, bits)
        assert m1.compose(m2).apply(w) == m1.apply(m2.apply(w))

    @settings(max_examples=40)
    @given(codemaps_st(6), st.integers(0, 63))
    def test_inverse(self, m, bits):
        w = Word(6, bits)
        assert m.inverse().apply(m.apply(w)) == w
        assert m.apply(m.inverse().apply(w)) == w

    @settings(max_examples=25)
    @given(codemaps_st(5))
    def test_action_on_codes_preserves_size(self, m):
        c = Code.from_ints(5, range(10))
        img = apply_codemap(m, c)
        assert len(img) == len(c)
        assert apply_codemap(m.inverse(), img) == c


class TestExtendPuncture:
    def test_extend_makes_even(self, h15):
        ext = extend_parity(h15)
        assert ext.length == 16
        assert all(w.weight % 2 == 0 for w in ext)

    def test_puncture_inverts_extension(self, h15):
        assert puncture(extend_parity(h15), 16) == h15

    def test_puncture_any_coordinate_of_extended(self, h15):
        # puncturing an extended perfect code anywhere yields a perfect code
        ext = extend_parity(h15)
        for coord in (1, 7, 16):
            assert validate_perfect(puncture(ext, coord)).ok

    def test_puncture_collision_keeps_first(self):
        c = Code.from_ints(2, [0b00, 0b10])
        assert puncture(c, 2) == Code.from_ints(1, [0])


class TestValidators:
    def test_hamming_is_perfect(self, h15):
        assert validate_perfect(h15).ok

    def test_extended_hamming_validates(self, xh16):
        assert validate_extended_perfect(xh16).ok

    def test_wrong_cardinality(self):
        r = validate_perfect(Code.from_ints(7, [0, 7]))
        assert not r and "sphere packing" in r.reason

    def test_low_distance(self):
        words = list(range(16))  # all of F_2^4 padded into length 7... not perfect
        r = validate_perfect(Code.from_ints(7, words))
        assert not r

    def test_odd_distance_rejected_for_extended(self):
        r = validate_extended_perfect(Code.from_ints(4, [0b0000, 0b0111]))
        assert not r


class TestCodeFiles:
    def test_round_trip(self, tmp_path, h15):
        p = tmp_path / "c.txt"
        write_code(h15, p)
        assert read_code(p) == h15
        # byte-exact stability
        text = p.read_text()
        assert text == format_code(parse_code(text))

    def test_header_and_comments(self):
        c = parse_code("c a comment\nlength=4\n0000\n1111\n")
        assert c == Code.from_ints(4, [0, 15])

    def test_duplicate_line_rejected(self):
        with pytest.raises(FormatError) as ei:
            parse_code("101\n101\n")
        assert ei.value.line == 2

    def test_width_mismatch_rejected(self):
        with pytest.raises(FormatError) as ei:
            parse_code("101\n1011\n")
        assert ei.value.line == 2

    def test_junk_rejected(self):
        with pytest.raises(FormatError):
            parse_code("length=3\n10x\n")

    def test_empty_rejected(self):
        with pytest.raises(FormatError):
            parse_code("c nothing here\n")


def test_random_codemap_deterministic():
    a = random_codemap(9, random.Random(3))
    b = random_codemap(9, random.Random(3))
    assert a == b
