"""
Sign-magnitude fixed-point representation and per-tensor quantization.

Scalars use :class:`SignMagWord`; tensors are carried as signed integer code
arrays (``code = (-1)**sign * mag``), which is the same information with the
negative zero already normalized away.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import ConfigError, NonFiniteInputError, WidthOverflowError

MIN_BITS = 1
MAX_BITS = 16


def max_code(n_bits: int) -> int:
    """Largest magnitude representable in ``n_bits``."""
    return (1 << n_bits) - 1


def _check_bits(n_bits: int) -> None:
    if not isinstance(n_bits, (int, np.integer)) or not MIN_BITS <= n_bits <= MAX_BITS:
        raise ConfigError(f"n_bits must be an integer in [{MIN_BITS}, {MAX_BITS}], got {n_bits!r}")


@dataclass(frozen=True)
class SignMagWord:
    """Sign bit plus an ``n_bits`` wide unsigned magnitude."""

    sign: int
    mag: int
    n_bits: int = 8

    def __post_init__(self):
        _check_bits(self.n_bits)
        if self.sign not in (0, 1):
            raise ConfigError(f"sign bit must be 0 or 1, got {self.sign!r}")
        if not 0 <= self.mag <= max_code(self.n_bits):
            raise WidthOverflowError(
                f"magnitude {self.mag} does not fit in {self.n_bits} bits"
            )
        if self.mag == 0 and self.sign == 1:
            object.__setattr__(self, "sign", 0)

    @classmethod
    def from_int(cls, value: int, n_bits: int = 8) -> "SignMagWord":
        """Build a word from a signed integer code."""
        return cls(sign=1 if value < 0 else 0, mag=abs(int(value)), n_bits=n_bits)

    @property
    def value(self) -> int:
        return -self.mag if self.sign else self.mag

    def __neg__(self) -> "SignMagWord":
        return SignMagWord(sign=self.sign ^ 1, mag=self.mag, n_bits=self.n_bits)


@dataclass(frozen=True)
class QuantParams:
    """Per-tensor symmetric quantization parameters."""

    n_bits: int
    scale: float

    def __post_init__(self):
        _check_bits(self.n_bits)
        if not math.isfinite(self.scale) or self.scale <= 0:
            raise ConfigError(f"scale must be a positive finite number, got {self.scale!r}")

    @property
    def max_code(self) -> int:
        return max_code(self.n_bits)


def quantize(x: float, p: QuantParams) -> SignMagWord:
    """
    Quantize a real value to a saturating sign-magnitude word.

    Rounding is half away from zero; values beyond full scale clamp to the
    largest code.

    Raises:
        NonFiniteInputError: If ``x`` is NaN or infinite
    """
    if not math.isfinite(x):
        raise NonFiniteInputError(f"non-finite input: {x!r}")
    mag = min(math.floor(abs(x) * p.scale + 0.5), p.max_code)
    return SignMagWord(sign=1 if x < 0 else 0, mag=mag, n_bits=p.n_bits)


def dequantize(w: SignMagWord, p: QuantParams) -> float:
    """Return the real value represented by ``w`` under ``p``."""
    return (-w.mag if w.sign else w.mag) / p.scale


def calibrate_scale(tensor: Union[np.ndarray, Sequence[float]], n_bits: int) -> QuantParams:
    """
    Max-abs calibration: full scale maps onto the largest code.

    Args:
        tensor: Non-empty collection of finite reals
        n_bits: Magnitude width

    Returns:
        QuantParams with ``scale = (2**n_bits - 1) / max|tensor|`` (1.0 for an
        all-zero tensor)
    """
    _check_bits(n_bits)
    arr = np.asarray(tensor, dtype=np.float64)
    if arr.size == 0:
        raise ConfigError("cannot calibrate a scale on an empty tensor")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError("non-finite input in calibration tensor")
    peak = float(np.max(np.abs(arr)))
    if peak == 0.0:
        return QuantParams(n_bits=n_bits, scale=1.0)
    return QuantParams(n_bits=n_bits, scale=max_code(n_bits) / peak)


def quantize_array(x: np.ndarray, p: QuantParams) -> np.ndarray:
    """Vectorized :func:`quantize`; returns signed int64 codes."""
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError("non-finite input in tensor")
    mag = np.minimum(np.floor(np.abs(arr) * p.scale + 0.5), p.max_code).astype(np.int64)
    return np.where(arr < 0, -mag, mag)


def dequantize_array(codes: np.ndarray, p: QuantParams) -> np.ndarray:
    """Vectorized :func:`dequantize` over signed codes."""
    return np.asarray(codes, dtype=np.float64) / p.scale


def round_half_away(x: np.ndarray) -> np.ndarray:
    """Round half away from zero, returning int64."""
    arr = np.asarray(x, dtype=np.float64)
    return (np.sign(arr) * np.floor(np.abs(arr) + 0.5)).astype(np.int64)


def rebin_codes(codes: np.ndarray, from_bits: int, to_bits: int) -> np.ndarray:
    """
    Re-express magnitudes at another resolution over the same real range.

    Used to report statistics at a coarser resolution than the model runs at.
    """
    mags = np.abs(np.asarray(codes, dtype=np.int64))
    if from_bits == to_bits:
        return mags
    ratio = max_code(to_bits) / max_code(from_bits)
    return np.minimum(np.floor(mags * ratio + 0.5), max_code(to_bits)).astype(np.int64)
