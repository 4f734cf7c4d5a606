"""
Exhaustive oracle checks for the multiplier models.

The exact check sweeps every exact-arithmetic scheme over all sign
combinations and magnitude pairs and compares against the integer product.
When weights are strided, the chunk-basis check covers every weight against
every single-chunk data value.
The approximate check verifies the error envelope of the A-LUT-NA rule.
"""

from typing import Any, Dict, Iterator, List, Optional

import numpy as np

from .fixedpoint import max_code
from .lutcore import CHUNK_BITS, MultiplierConfig, Scheme
from .registry import SCHEME_REGISTRY, multiply_array

# Weight stride used when the full pair space is too large to sweep at desk scale.
WIDE_WEIGHT_STRIDE = 0x1111
_GRID_LIMIT = 1 << 22


def default_weight_stride(bits: int) -> int:
    return WIDE_WEIGHT_STRIDE if bits > 8 else 1


def _weight_batches(bits: int, stride: int) -> Iterator[np.ndarray]:
    weights = np.arange(0, max_code(bits) + 1, stride, dtype=np.int64)
    per_batch = max(1, _GRID_LIMIT // (1 << bits))
    for start in range(0, weights.size, per_batch):
        yield weights[start:start + per_batch]


def verify_exact(
    bits: int,
    weight_stride: Optional[int] = None,
    schemes: Optional[List[Scheme]] = None,
) -> Dict[str, Any]:
    """
    Compare every exact scheme with the integer product.

    Args:
        bits: Operand magnitude width (data and weight)
        weight_stride: Step over weight magnitudes (1 = exhaustive)
        schemes: Schemes to check (default: all exact schemes)

    Returns:
        Dict with total ``cases``, ``mismatches`` and a ``per_scheme`` breakdown
    """
    stride = default_weight_stride(bits) if weight_stride is None else weight_stride
    schemes = schemes or SCHEME_REGISTRY.exact_schemes()
    data = np.arange(0, max_code(bits) + 1, dtype=np.int64)
    per_scheme: Dict[str, Dict[str, int]] = {}

    for scheme in schemes:
        cfg = MultiplierConfig(scheme=scheme, data_bits=bits, weight_bits=bits)
        cases = 0
        mismatches = 0
        for weights in _weight_batches(bits, stride):
            w_grid, d_grid = np.meshgrid(weights, data, indexing='ij')
            expected_mag = w_grid * d_grid
            for w_sign in (1, -1):
                for d_sign in (1, -1):
                    got = multiply_array(w_sign * w_grid, d_sign * d_grid, cfg)
                    expected = w_sign * d_sign * expected_mag
                    mismatches += int(np.count_nonzero(got != expected))
                    cases += got.size
        per_scheme[cfg.config_id] = {'cases': cases, 'mismatches': mismatches}

    return {
        'bits': bits,
        'weight_stride': stride,
        'cases': sum(entry['cases'] for entry in per_scheme.values()),
        'mismatches': sum(entry['mismatches'] for entry in per_scheme.values()),
        'per_scheme': per_scheme,
    }


def chunk_basis_data(bits: int) -> np.ndarray:
    """Data magnitudes with at most one non-zero 2-bit chunk, plus zero."""
    values = [0] + [value << (CHUNK_BITS * k)
                    for k in range(bits // CHUNK_BITS)
                    for value in range(1, 1 << CHUNK_BITS)]
    return np.array(values, dtype=np.int64)


def verify_chunk_basis(bits: int, schemes: Optional[List[Scheme]] = None) -> Dict[str, Any]:
    """
    Check every weight magnitude against every single-chunk data value.

    The D&C product is a shift-add sum of independent per-chunk lookups, so a
    scheme that is exact on this basis is exact on every data value. This is
    the full-weight complement to a strided :func:`verify_exact` sweep.

    Returns:
        Dict with total ``cases``, ``mismatches`` and a ``per_scheme`` breakdown
    """
    schemes = schemes or SCHEME_REGISTRY.exact_schemes()
    data = chunk_basis_data(bits)
    per_scheme: Dict[str, Dict[str, int]] = {}

    for scheme in schemes:
        cfg = MultiplierConfig(scheme=scheme, data_bits=bits, weight_bits=bits)
        cases = 0
        mismatches = 0
        for weights in _weight_batches(bits, 1):
            w_grid, d_grid = np.meshgrid(weights, data, indexing='ij')
            for w_sign in (1, -1):
                for d_sign in (1, -1):
                    got = multiply_array(w_sign * w_grid, d_sign * d_grid, cfg)
                    mismatches += int(np.count_nonzero(got != w_sign * d_sign * w_grid * d_grid))
                    cases += got.size
        per_scheme[cfg.config_id] = {'cases': cases, 'mismatches': mismatches}

    return {
        'bits': bits,
        'cases': sum(entry['cases'] for entry in per_scheme.values()),
        'mismatches': sum(entry['mismatches'] for entry in per_scheme.values()),
        'per_scheme': per_scheme,
    }


def relative_error_bound(split: int) -> float:
    """Worst-case relative error of the approximate rule when the MSB half is non-zero."""
    return ((1 << split) - 1) / ((1 << (split + 1)) - 1)


def verify_approx_bounds(
    bits: int,
    split: Optional[int] = None,
    weight_stride: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Check the A-LUT-NA error envelope over all magnitude pairs.

    Properties checked per pair:
      - error is 0 when ``d < 2**split``
      - ``0 <= exact - approx <= w * (2**split - 1)``
      - relative error ``<= relative_error_bound(split) < 0.5`` when ``d >= 2**split``
      - negating either operand negates the result
    """
    cfg = MultiplierConfig(scheme=Scheme.DNC_APPROX, data_bits=bits, weight_bits=bits, approx_split=split)
    split = cfg.approx_split
    stride = default_weight_stride(bits) if weight_stride is None else weight_stride
    bound = relative_error_bound(split)
    data = np.arange(0, max_code(bits) + 1, dtype=np.int64)

    pairs = 0
    violations = 0
    max_relative = 0.0
    for weights in _weight_batches(bits, stride):
        w_grid, d_grid = np.meshgrid(weights, data, indexing='ij')
        exact = w_grid * d_grid
        approx = multiply_array(w_grid, d_grid, cfg)
        error = exact - approx
        low_only = d_grid < (1 << split)

        bad = (low_only & (error != 0))
        bad |= (error < 0) | (error > w_grid * max_code(split))
        nonzero = (~low_only) & (exact > 0)
        relative = np.zeros(exact.shape, dtype=np.float64)
        relative[nonzero] = error[nonzero] / exact[nonzero]
        bad |= nonzero & ((relative > bound) | (relative >= 0.5))
        bad |= multiply_array(-w_grid, d_grid, cfg) != -approx
        bad |= multiply_array(w_grid, -d_grid, cfg) != -approx

        pairs += exact.size
        violations += int(np.count_nonzero(bad))
        if nonzero.any():
            max_relative = max(max_relative, float(relative[nonzero].max()))

    return {
        'bits': bits,
        'split': split,
        'weight_stride': stride,
        'pairs': pairs,
        'violations': violations,
        'max_relative_error': max_relative,
        'relative_error_bound': bound,
    }
