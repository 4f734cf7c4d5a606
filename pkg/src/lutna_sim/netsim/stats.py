"""
Activation and weight statistics behind the zero-LSB approximation.

The approximate multiplier drops the LSB-side partial product; these helpers
measure how often that product is zero anyway on a real model.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..arith.fixedpoint import max_code, rebin_codes
from ..arith.lutcore import CHUNK_BITS
from ..errors import ConfigError, EmptyDatasetError
from .engine import forward, quantize_inputs
from .model import QuantModel


@dataclass
class ActivationHistogram:
    """Counts per magnitude code in ``[0, 2**n_bits)``."""

    n_bits: int
    counts: np.ndarray

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.counts.shape != (max_code(self.n_bits) + 1,):
            raise ConfigError(
                f"{self.n_bits}b histogram needs {max_code(self.n_bits) + 1} bins, got {self.counts.shape}"
            )
        if np.any(self.counts < 0):
            raise ConfigError("histogram counts must be non-negative")

    @classmethod
    def from_codes(cls, codes: np.ndarray, n_bits: int) -> "ActivationHistogram":
        mags = np.abs(np.asarray(codes, dtype=np.int64)).ravel()
        return cls(n_bits, np.bincount(mags, minlength=max_code(n_bits) + 1))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def mode(self) -> int:
        return int(np.argmax(self.counts))

    def probabilities(self) -> np.ndarray:
        total = self.total
        if total == 0:
            raise EmptyDatasetError(f"{self.n_bits}b histogram is empty")
        return self.counts / total

    def __add__(self, other: "ActivationHistogram") -> "ActivationHistogram":
        if other.n_bits != self.n_bits:
            raise ConfigError(f"cannot merge {self.n_bits}b and {other.n_bits}b histograms")
        return ActivationHistogram(self.n_bits, self.counts + other.counts)


def activation_histogram(
    model: QuantModel,
    inputs: np.ndarray,
    n_bits: Optional[int] = None,
    batch_size: int = 256,
) -> ActivationHistogram:
    """
    Histogram of every post-layer activation magnitude over a dataset.

    Raw accumulator outputs (class scores) are not activations and are
    skipped. Codes are re-binned from the model's activation width to
    ``n_bits`` when that differs.

    Args:
        model: Quantized model with a multiplier on every compute layer
        inputs: Real-valued samples
        n_bits: Reporting resolution (defaults to the model's activation width)
    """
    n_bits = model.act_bits if n_bits is None else n_bits
    hist = ActivationHistogram(n_bits, np.zeros(max_code(n_bits) + 1, dtype=np.int64))
    x_codes = quantize_inputs(model, inputs)
    for start in range(0, len(x_codes), batch_size):
        result = forward(model, x_codes[start:start + batch_size])
        for layer, codes in zip(model.layers, result.activations):
            if layer.is_compute and layer.out_params is None:
                continue
            hist = hist + ActivationHistogram.from_codes(
                rebin_codes(codes, model.act_bits, n_bits), n_bits
            )
    return hist


def weight_histogram(model: QuantModel, n_bits: Optional[int] = None) -> ActivationHistogram:
    """Histogram of surviving weight magnitudes across every compute layer."""
    n_bits = model.weight_bits if n_bits is None else n_bits
    hist = ActivationHistogram(n_bits, np.zeros(max_code(n_bits) + 1, dtype=np.int64))
    for layer in model.compute_layers:
        surviving = layer.weight_codes[layer.mask]
        hist = hist + ActivationHistogram.from_codes(
            rebin_codes(surviving, layer.weight_params.n_bits, n_bits), n_bits
        )
    return hist


def lsb_product_distribution(hist: ActivationHistogram, weight_hist: ActivationHistogram) -> np.ndarray:
    """
    Probability of every ``w.mag * chunk`` product value.

    ``chunk`` is the low 2 bits of an activation code drawn from ``hist`` and
    ``w.mag`` a weight magnitude drawn from ``weight_hist``. The distribution
    is enumerated exhaustively over both histograms.

    Returns:
        Array indexed by product value, length ``max_weight * 3 + 1``

    Raises:
        EmptyDatasetError: If either histogram is empty
    """
    act_p = hist.probabilities()
    weight_p = weight_hist.probabilities()
    chunk_values = 1 << CHUNK_BITS
    chunk_p = np.bincount(
        np.arange(act_p.size) & (chunk_values - 1), weights=act_p, minlength=chunk_values
    )
    mags = np.arange(weight_p.size)
    chunks = np.arange(chunk_values)
    products = np.outer(mags, chunks)
    joint = np.outer(weight_p, chunk_p)
    return np.bincount(products.ravel(), weights=joint.ravel(), minlength=int(products.max()) + 1)
