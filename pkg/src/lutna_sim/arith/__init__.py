"""
Arithmetic core: sign-magnitude fixed point and the LUT-NA multiplier family.
"""

from .fixedpoint import (
    QuantParams,
    SignMagWord,
    calibrate_scale,
    dequantize,
    dequantize_array,
    quantize,
    quantize_array,
)
from .lutcore import (
    LutBank,
    MultiplierConfig,
    Scheme,
    build_lut_bank,
    dnc_multiply_approx,
    dnc_multiply_exact,
    lut_chunk_multiply,
    tlut_multiply,
)
from .registry import SCHEME_REGISTRY, dot_product, multiply, multiply_array

__all__ = [
    'QuantParams',
    'SignMagWord',
    'calibrate_scale',
    'dequantize',
    'dequantize_array',
    'quantize',
    'quantize_array',
    'LutBank',
    'MultiplierConfig',
    'Scheme',
    'build_lut_bank',
    'dnc_multiply_approx',
    'dnc_multiply_exact',
    'dot_product',
    'lut_chunk_multiply',
    'multiply',
    'multiply_array',
    'tlut_multiply',
    'SCHEME_REGISTRY',
]
