from collections import Counter

import pytest

from mdgcodes import (
    UnsupportedParameterError,
    VasilevSpec,
    Word,
    gen_extended,
    gen_family,
    gen_hamming,
    gen_vasilev,
    min_distance,
    rank_invariant,
    validate_extended_perfect,
    validate_perfect,
)
from mdgcodes.words import Code


class TestHamming:
    def test_length7(self, h7):
        assert h7.length == 7 and len(h7) == 16
        assert validate_perfect(h7).ok
        assert min_distance(h7) == 3

    def test_length15(self, h15):
        assert h15.length == 15 and len(h15) == 2048
        assert validate_perfect(h15).ok
        assert rank_invariant(h15) == 11

    def test_contains_zero_and_is_linear(self, h15):
        assert Word.zero(15) in h15
        words = set(w.bits for w in h15)
        sample = sorted(words)[:40]
        assert all((a ^ b) in words for a in sample for b in sample)

    def test_parameter_bounds(self):
        with pytest.raises(ValueError):
            gen_hamming(2)
        with pytest.raises(UnsupportedParameterError):
            gen_hamming(5)


class TestVasilev:
    def test_seeded_is_perfect_nonlinear(self, v15a):
        assert validate_perfect(v15a).ok
        assert rank_invariant(v15a) >= 12

    def test_zero_function_is_linear(self, h7):
        code = gen_vasilev(VasilevSpec.zero(h7))
        assert validate_perfect(code).ok
        assert rank_invariant(code) == 11

    def test_distinct_seeds_distinct_codes(self, v15a, v15b):
        assert v15a != v15b

    def test_deterministic(self, v15a):
        assert gen_family("vasilev", 4, seed=1) == v15a

    def test_partial_function_rejected(self, h7):
        with pytest.raises(ValueError):
            VasilevSpec(h7, {w: 0 for w in list(h7)[:3]}, seed=None)

    def test_bad_base_rejected(self):
        bad = Code.from_ints(7, [0, 127])
        with pytest.raises(ValueError):
            gen_vasilev(VasilevSpec.zero(bad))


class TestExtendedFamilies:
    def test_ext_hamming_weight_distribution(self, xh16):
        assert validate_extended_perfect(xh16).ok
        dist = Counter(w.weight for w in xh16)
        assert dist == {0: 1, 4: 140, 6: 448, 8: 870, 10: 448, 12: 140, 16: 1}

    def test_ext_vasilev_valid(self, xv16):
        assert validate_extended_perfect(xv16).ok

    def test_gen_extended_matches_manual(self, h15, xh16):
        assert gen_extended("hamming", 4) == xh16

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            gen_family("golay", 4)
