"""
Activation/weight bit-resolution sweep of a trained model.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..arith.lutcore import Scheme
from .builder import quantize_network, to_float_network
from .engine import evaluate
from .model import QuantModel


@dataclass(frozen=True)
class BitSweepPoint:
    act_bits: int
    weight_bits: int
    accuracy: float
    float_accuracy: float


def bit_sweep(
    model: QuantModel,
    inputs: np.ndarray,
    labels: np.ndarray,
    act_bits: Sequence[int],
    weight_bits: Sequence[int],
    calib_inputs: Optional[np.ndarray] = None,
    workers: int = 1,
    on_point: Optional[Callable[[BitSweepPoint], None]] = None,
) -> List[BitSweepPoint]:
    """
    Re-quantize the model at every (activation, weight) width pair and
    evaluate it with exact D&C multipliers.

    The model's dequantized weights are the starting point for every pair,
    and its real-valued accuracy is reported alongside as the baseline.

    Args:
        model: Trained quantized model
        inputs: Evaluation samples
        labels: Evaluation labels
        act_bits: Activation widths
        weight_bits: Weight widths
        calib_inputs: Calibration samples (defaults to ``inputs``)
        workers: Grid points evaluated concurrently

    Returns:
        Row-major grid (activation width outer) of sweep points
    """
    net = to_float_network(model)
    float_accuracy = net.accuracy(np.asarray(inputs, dtype=np.float64), np.asarray(labels))
    calib = inputs if calib_inputs is None else calib_inputs
    grid: List[Tuple[int, int]] = [(a, w) for a in act_bits for w in weight_bits]

    def run(pair: Tuple[int, int]) -> BitSweepPoint:
        a, w = pair
        quantized = quantize_network(net, calib, act_bits=a, weight_bits=w, scheme=Scheme.DNC_EXACT, name=model.name)
        return BitSweepPoint(a, w, evaluate(quantized, inputs, labels), float_accuracy)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(run, grid))
    else:
        points = [run(pair) for pair in grid]
    if on_point is not None:
        for point in points:
            on_point(point)
    return points
