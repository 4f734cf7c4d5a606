"""
Tests for command-line spec string parsing
"""

import click
import pytest
from lutna_sim.arith.lutcore import MultiplierConfig, Scheme
from lutna_sim.utils import (
    SPLIT_POINT,
    parse_bit_range,
    parse_config_id,
    parse_config_list,
    parse_dataset_spec,
    parse_split_point,
)


class TestConfigIdParsing:
    """Test cases for multiplier config ids"""

    def test_square_widths(self):
        """Test parsing a config with equal widths"""
        assert parse_config_id("dnc-exact-8") == MultiplierConfig(Scheme.DNC_EXACT, 8, 8)

    def test_mixed_widths(self):
        """Test parsing a config with a narrower weight"""
        cfg = parse_config_id("tlut-8x4")
        assert (cfg.scheme, cfg.data_bits, cfg.weight_bits) == (Scheme.TLUT, 8, 4)

    def test_approx_split(self):
        """Test parsing an explicit approximate split"""
        assert parse_config_id("dnc-approx-8-s2").approx_split == 2
        assert parse_config_id("dnc-approx-8").approx_split == 4

    def test_raw_storage(self):
        """Test parsing the unoptimized-storage suffix"""
        assert not parse_config_id("dnc-exact-4-raw").storage_optimized

    def test_case_and_whitespace(self):
        """Test that ids are normalized"""
        assert parse_config_id("  WALLACE-8 ").scheme == Scheme.DIGITAL_WALLACE

    def test_id_round_trip(self):
        """Test that every canonical id parses back to itself"""
        for text in ("array-16", "dnc-exact-8x4", "dnc-approx-8-s6", "dnc-approx-4-raw"):
            assert parse_config_id(text).config_id == text

    def test_empty_id(self):
        """Test that empty ids raise ValueError"""
        with pytest.raises(ValueError, match="cannot be empty"):
            parse_config_id("")

    def test_unknown_scheme(self):
        """Test that unknown schemes raise ValueError"""
        with pytest.raises(ValueError, match="invalid config id"):
            parse_config_id("booth-8")

    def test_unsupported_width(self):
        """Test that widths outside the datapath set raise ValueError"""
        with pytest.raises(ValueError):
            parse_config_id("dnc-exact-6")

    def test_raw_on_digital(self):
        """Test that -raw is rejected for non-LUT schemes"""
        with pytest.raises(ValueError, match="only applies"):
            parse_config_id("wallace-8-raw")

    def test_config_list(self):
        """Test parsing a comma-separated list in order"""
        cfgs = parse_config_list("dnc-exact-4,dnc-approx-4,")
        assert [cfg.config_id for cfg in cfgs] == ["dnc-exact-4", "dnc-approx-4"]
        with pytest.raises(ValueError):
            parse_config_list(" , ")


class TestDatasetSpecParsing:
    """Test cases for dataset spec strings"""

    def test_synthetic_defaults(self):
        """Test a bare synthetic generator name"""
        source = parse_dataset_spec("synthetic:bars", default_seed=9)
        assert (source.kind, source.generator, source.seed, source.size) == ('synthetic', 'bars', 9, 400)

    def test_synthetic_options(self):
        """Test synthetic seed, size and validation fraction"""
        source = parse_dataset_spec("synthetic:blobs:seed=3:size=64:val=0.5")
        assert (source.seed, source.size, source.val_fraction) == (3, 64, 0.5)
        assert source.spec == "synthetic:blobs:seed=3:size=64"

    def test_csv(self):
        """Test a CSV path"""
        assert parse_dataset_spec("csv:data/train.csv").paths == ("data/train.csv",)

    def test_idx(self):
        """Test an IDX image/label pair"""
        assert parse_dataset_spec("idx:img.idx,lbl.idx").paths == ("img.idx", "lbl.idx")

    def test_idx_needs_two_paths(self):
        """Test that a single IDX path raises ValueError"""
        with pytest.raises(ValueError, match="idx spec"):
            parse_dataset_spec("idx:img.idx")

    def test_unknown_kind(self):
        """Test that unknown kinds raise ValueError"""
        with pytest.raises(ValueError, match="unknown dataset kind"):
            parse_dataset_spec("hdf5:x.h5")

    def test_unknown_option(self):
        """Test that unknown synthetic options raise ValueError"""
        with pytest.raises(ValueError, match="unknown synthetic option"):
            parse_dataset_spec("synthetic:bars:noise=1")

    def test_bad_number(self):
        """Test that non-numeric option values raise ValueError"""
        with pytest.raises(ValueError, match="invalid number"):
            parse_dataset_spec("synthetic:bars:size=many")

    def test_bad_val_fraction(self):
        """Test that the validation fraction must lie inside (0, 1)"""
        with pytest.raises(ValueError):
            parse_dataset_spec("synthetic:bars:val=1.5")

    def test_missing_details(self):
        """Test that a bare kind raises ValueError"""
        with pytest.raises(ValueError):
            parse_dataset_spec("synthetic")


class TestBitRangeParsing:
    """Test cases for bit-width ranges"""

    def test_inclusive_range(self):
        assert parse_bit_range("2..8") == [2, 3, 4, 5, 6, 7, 8]

    def test_list(self):
        assert parse_bit_range("8,4,2") == [8, 4, 2]

    def test_single(self):
        assert parse_bit_range("8") == [8]

    def test_reversed_range(self):
        with pytest.raises(ValueError, match="empty bit range"):
            parse_bit_range("8..2")

    def test_out_of_bounds(self):
        with pytest.raises(ValueError, match="outside"):
            parse_bit_range("0..4")
        with pytest.raises(ValueError, match="outside"):
            parse_bit_range("17")

    def test_repeats(self):
        with pytest.raises(ValueError, match="repeats"):
            parse_bit_range("4,4")

    def test_garbage(self):
        with pytest.raises(ValueError, match="invalid bit range"):
            parse_bit_range("a..b")


class TestSplitPointParsing:
    """Test cases for approximation split points"""

    @pytest.mark.parametrize('text,expected', [('2', 2), (' 4 ', 4), (6, 6)])
    def test_valid(self, text, expected):
        assert parse_split_point(text) == expected

    @pytest.mark.parametrize('text', ['0', '-2', '3', 'two', ''])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            parse_split_point(text)

    def test_param_type_is_usage_error(self):
        with pytest.raises(click.BadParameter, match='positive multiple of 2'):
            SPLIT_POINT.convert('5', None, None)


if __name__ == "__main__":
    pytest.main([__file__])
