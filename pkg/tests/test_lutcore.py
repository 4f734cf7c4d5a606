"""
Tests for the LUT-NA multiplier models
"""

import numpy as np
import pytest

from lutna_sim.arith.fixedpoint import SignMagWord
from lutna_sim.arith.lutcore import (
    MultiplierConfig,
    Scheme,
    accumulator_bits,
    build_lut_bank,
    digital_multiply,
    dnc_multiply_approx,
    dnc_multiply_exact,
    lut_chunk_multiply,
    tlut_multiply,
)
from lutna_sim.arith.registry import dot_product, multiply, multiply_array
from lutna_sim.errors import ConfigError, LengthMismatchError, WidthOverflowError


def word(value: int, n_bits: int = 8) -> SignMagWord:
    return SignMagWord.from_int(value, n_bits)


class TestLutBank:
    """Test cases for constant-weight banks"""

    def test_entries_and_cells(self):
        bank = build_lut_bank(5, 4)
        assert bank.entries == (0, 5, 10, 15)
        assert bank.stored_cells == (0, 4, 0, 5)
        assert bank.total_stored_cells == 9

    def test_full_scale_weight(self):
        bank = build_lut_bank(255, 8)
        assert bank.entries[3] == 765
        assert bank.stored_cells == (0, 8, 0, 9)

    def test_chunk_select(self):
        assert lut_chunk_multiply(build_lut_bank(9, 4), 2) == 18

    def test_chunk_too_wide(self):
        with pytest.raises(WidthOverflowError):
            lut_chunk_multiply(build_lut_bank(9, 4), 4)

    def test_weight_too_wide(self):
        with pytest.raises(WidthOverflowError):
            build_lut_bank(16, 4)


class TestMultiplierConfig:
    """Test cases for configuration validation and naming"""

    def test_default_split_is_half(self):
        assert MultiplierConfig(Scheme.DNC_APPROX, 8, 8).approx_split == 4

    def test_config_ids(self):
        assert MultiplierConfig(Scheme.DNC_EXACT, 8, 8).config_id == "dnc-exact-8"
        assert MultiplierConfig(Scheme.DNC_EXACT, 8, 4).config_id == "dnc-exact-8x4"
        assert MultiplierConfig(Scheme.DNC_APPROX, 8, 8, approx_split=2).config_id == "dnc-approx-8-s2"
        assert MultiplierConfig(Scheme.DNC_EXACT, 4, 4, storage_optimized=False).config_id == "dnc-exact-4-raw"

    @pytest.mark.parametrize('kwargs', [
        {'scheme': Scheme.DNC_EXACT, 'data_bits': 6},
        {'scheme': Scheme.DNC_APPROX, 'data_bits': 8, 'approx_split': 3},
        {'scheme': Scheme.DNC_APPROX, 'data_bits': 8, 'approx_split': 8},
        {'scheme': Scheme.DNC_APPROX, 'data_bits': 2},
        {'scheme': Scheme.DNC_EXACT, 'data_bits': 8, 'approx_split': 4},
        {'scheme': Scheme.TLUT, 'data_bits': 8, 'chunk_bits': 3},
    ])
    def test_invalid_configs(self, kwargs):
        with pytest.raises(ConfigError):
            MultiplierConfig(**kwargs)

    def test_for_bits_rounds_up(self):
        cfg = MultiplierConfig.for_bits(Scheme.DNC_EXACT, 5, 3)
        assert (cfg.data_bits, cfg.weight_bits) == (8, 4)
        with pytest.raises(ConfigError):
            MultiplierConfig.for_bits(Scheme.DNC_EXACT, 17, 8)


class TestExactMultiply:
    """Test cases for exact divide-and-conquer multiplication"""

    def test_examples(self):
        cfg4 = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
        assert dnc_multiply_exact(word(5, 4), word(9, 4), cfg4) == 45
        assert dnc_multiply_exact(word(5, 4), word(-9, 4), cfg4) == -45
        cfg8 = MultiplierConfig(Scheme.DNC_EXACT, 8, 8)
        assert dnc_multiply_exact(word(200), word(170), cfg8) == 34000

    def test_zero_operands(self):
        cfg = MultiplierConfig(Scheme.DNC_EXACT, 8, 8)
        assert dnc_multiply_exact(word(0), word(-77), cfg) == 0
        assert dnc_multiply_exact(word(-3), word(0), cfg) == 0

    def test_exhaustive_4bit(self):
        cfg = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
        for w in range(-15, 16):
            for d in range(-15, 16):
                assert dnc_multiply_exact(word(w, 4), word(d, 4), cfg) == w * d

    def test_operand_too_wide(self):
        cfg = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
        with pytest.raises(WidthOverflowError):
            dnc_multiply_exact(word(5, 8), word(17, 8), cfg)

    def test_scheme_mismatch(self):
        with pytest.raises(ConfigError):
            dnc_multiply_exact(word(1), word(1), MultiplierConfig(Scheme.TLUT, 8, 8))


class TestApproxMultiply:
    """Test cases for the approximate variant"""

    def test_high_half_nonzero(self):
        cfg = MultiplierConfig(Scheme.DNC_APPROX, 4, 4, approx_split=2)
        assert dnc_multiply_approx(word(5, 4), word(9, 4), cfg) == 40

    def test_high_half_zero_is_exact(self):
        cfg = MultiplierConfig(Scheme.DNC_APPROX, 4, 4, approx_split=2)
        assert dnc_multiply_approx(word(5, 4), word(3, 4), cfg) == 15

    def test_8bit_default_split(self):
        cfg = MultiplierConfig(Scheme.DNC_APPROX, 8, 8)
        assert dnc_multiply_approx(word(200), word(17), cfg) == 3200
        assert dnc_multiply_approx(word(-200), word(17), cfg) == -3200

    def test_never_overestimates(self):
        cfg = MultiplierConfig(Scheme.DNC_APPROX, 4, 4)
        for w in range(16):
            for d in range(16):
                assert 0 <= dnc_multiply_approx(word(w, 4), word(d, 4), cfg) <= w * d


class TestOtherSchemes:
    """Test cases for T-LUT and digital reference multipliers"""

    def test_tlut(self):
        cfg = MultiplierConfig(Scheme.TLUT, 4, 4)
        assert tlut_multiply(word(7, 4), word(13, 4), cfg) == 91
        assert tlut_multiply(word(-7, 4), word(13, 4), cfg) == -91

    def test_digital(self):
        for scheme in (Scheme.DIGITAL_WALLACE, Scheme.DIGITAL_ARRAY):
            cfg = MultiplierConfig(scheme, 8, 8)
            assert digital_multiply(word(-12), word(-11), cfg) == 132

    def test_dispatch(self):
        cfg = MultiplierConfig(Scheme.DNC_APPROX, 4, 4, approx_split=2)
        assert multiply(word(5, 4), word(9, 4), cfg) == 40


class TestArrayMultiply:
    """Test cases for the vectorized models used by the network engine"""

    @pytest.mark.parametrize('scheme', list(Scheme))
    def test_matches_scalar(self, scheme):
        cfg = MultiplierConfig(scheme, 4, 4)
        w = np.arange(-15, 16).reshape(-1, 1)
        d = np.arange(-15, 16).reshape(1, -1)
        products = multiply_array(w, d, cfg)
        for i, wi in enumerate(range(-15, 16)):
            for j, dj in enumerate(range(-15, 16)):
                assert products[i, j] == multiply(word(wi, 4), word(dj, 4), cfg)

    def test_overflow(self):
        cfg = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
        with pytest.raises(WidthOverflowError):
            multiply_array(np.array([3]), np.array([16]), cfg)


class TestSignHandling:
    """Signs combine by XOR on every scheme; magnitudes never see them"""

    @pytest.mark.parametrize('scheme', list(Scheme))
    def test_negation_is_symmetric(self, scheme):
        cfg = MultiplierConfig(scheme, 4, 4)
        for wi in range(-15, 16):
            for dj in range(-15, 16):
                product = multiply(word(wi, 4), word(dj, 4), cfg)
                assert multiply(-word(wi, 4), word(dj, 4), cfg) == -product
                assert multiply(word(wi, 4), -word(dj, 4), cfg) == -product
                assert multiply(-word(wi, 4), -word(dj, 4), cfg) == product
                if product:
                    assert (product < 0) == ((wi < 0) != (dj < 0))

    def test_negative_zero_normalizes(self):
        zero = SignMagWord(sign=1, mag=0, n_bits=4)
        assert zero.sign == 0
        assert -word(0, 4) == word(0, 4)

    @pytest.mark.parametrize('scheme', list(Scheme))
    def test_negative_zero_operand(self, scheme):
        cfg = MultiplierConfig(scheme, 4, 4)
        zero = SignMagWord(sign=1, mag=0, n_bits=4)
        for value in (-15, -1, 1, 15):
            assert multiply(zero, word(value, 4), cfg) == 0
            assert multiply(word(value, 4), zero, cfg) == 0
        assert multiply_array(np.array([0, -3]), np.array([-5, 0]), cfg).tolist() == [0, 0]


class TestDotProduct:
    """Test cases for multiply-accumulate"""

    def test_exact_and_approx(self):
        w = [word(5, 4), word(3, 4)]
        d = [word(9, 4), word(2, 4)]
        assert dot_product(w, d, MultiplierConfig(Scheme.DNC_EXACT, 4, 4)) == 51
        assert dot_product(w, d, MultiplierConfig(Scheme.DNC_APPROX, 4, 4, approx_split=2)) == 46

    def test_empty(self):
        assert dot_product([], [], MultiplierConfig(Scheme.DNC_EXACT, 8, 8)) == 0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            dot_product([word(1)], [], MultiplierConfig(Scheme.DNC_EXACT, 8, 8))

    def test_accumulator_width(self):
        cfg = MultiplierConfig(Scheme.DNC_EXACT, 8, 8)
        assert accumulator_bits(cfg, 1) == 18
        assert accumulator_bits(cfg, 1024) == 28


if __name__ == "__main__":
    pytest.main([__file__])
