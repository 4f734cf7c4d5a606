"""
Tests for the exhaustive multiplier oracle checks
"""

import pytest

from lutna_sim.arith.lutcore import Scheme
from lutna_sim.arith.verify import (
    WIDE_WEIGHT_STRIDE,
    chunk_basis_data,
    default_weight_stride,
    relative_error_bound,
    verify_approx_bounds,
    verify_chunk_basis,
    verify_exact,
)


class TestVerifyExact:
    """Test cases for the exact-scheme sweep"""

    def test_4bit_all_exact_schemes(self):
        result = verify_exact(4)
        assert result['mismatches'] == 0
        assert result['cases'] == 4 * 4 * 16 * 16
        assert set(result['per_scheme']) == {'tlut-4', 'dnc-exact-4', 'wallace-4', 'array-4'}

    def test_case_count_8bit(self):
        result = verify_exact(8, schemes=[Scheme.DNC_EXACT])
        assert result['mismatches'] == 0
        assert result['cases'] == 4 * 256 * 256

    def test_approx_scheme_is_caught(self):
        result = verify_exact(4, schemes=[Scheme.DNC_APPROX])
        assert result['mismatches'] > 0

    def test_weight_stride(self):
        result = verify_exact(4, weight_stride=5, schemes=[Scheme.DNC_EXACT])
        # weights 0, 5, 10, 15
        assert result['cases'] == 4 * 4 * 16
        assert result['weight_stride'] == 5

    def test_default_stride(self):
        assert default_weight_stride(8) == 1
        assert default_weight_stride(16) == WIDE_WEIGHT_STRIDE


class TestChunkBasis:
    """Test cases for the every-weight, single-chunk-data sweep"""

    def test_basis_values(self):
        assert chunk_basis_data(4).tolist() == [0, 1, 2, 3, 4, 8, 12]
        assert len(chunk_basis_data(16)) == 25

    def test_4bit_case_count(self):
        result = verify_chunk_basis(4, [Scheme.DNC_EXACT])
        assert result['cases'] == 4 * 16 * 7
        assert result['mismatches'] == 0
        assert result['per_scheme'] == {'dnc-exact-4': {'cases': 448, 'mismatches': 0}}

    def test_16bit_covers_every_weight(self):
        result = verify_chunk_basis(16, [Scheme.DNC_EXACT])
        assert result['cases'] == 4 * 65536 * 25
        assert result['mismatches'] == 0

    def test_default_schemes_are_exact(self):
        result = verify_chunk_basis(2)
        assert set(result['per_scheme']) == {'tlut-2', 'dnc-exact-2', 'wallace-2', 'array-2'}


class TestVerifyApprox:
    """Test cases for the approximate error envelope"""

    def test_relative_bound_below_half(self):
        assert relative_error_bound(2) == pytest.approx(3 / 7)
        assert relative_error_bound(4) == pytest.approx(15 / 31)
        assert relative_error_bound(8) < 0.5

    @pytest.mark.parametrize('bits,split', [(4, 2), (8, 4), (8, 2), (8, 6)])
    def test_no_violations(self, bits, split):
        result = verify_approx_bounds(bits, split=split)
        assert result['violations'] == 0
        assert result['pairs'] == (1 << bits) ** 2
        assert result['max_relative_error'] <= result['relative_error_bound']

    def test_bound_is_reached(self):
        # w * 0b0111 approximated as w * 0b0100
        result = verify_approx_bounds(4, split=2)
        assert result['max_relative_error'] == pytest.approx(3 / 7)

    def test_default_split(self):
        assert verify_approx_bounds(4)['split'] == 2


if __name__ == "__main__":
    pytest.main([__file__])
