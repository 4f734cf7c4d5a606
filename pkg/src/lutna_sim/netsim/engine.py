"""
Integer inference engine.

Every multiply inside dense and conv layers goes through the layer's assigned
multiplier scheme; accumulation is exact int64. After each compute layer the
accumulator is requantized with the layer's static scale. relu, pooling and
flatten act on integer codes directly.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..arith.fixedpoint import quantize_array
from ..arith.lutcore import MultiplierConfig
from ..arith.registry import multiply_array
from ..errors import EmptyDatasetError, ShapeMismatchError, UnassignedSchemeError
from . import kernels
from .model import QuantLayer, QuantModel

# Upper bound on elements of one broadcast product block.
_BLOCK_ELEMENTS = 1 << 20


@dataclass
class ForwardResult:
    """
    Output of one batched forward pass.

    ``codes[0]`` is the quantized input and ``codes[i + 1]`` the output of
    layer ``i``; ``codes[i] / scales[i]`` recovers real values.
    ``accumulators`` holds each compute layer's pre-activation integers.
    """

    scores: np.ndarray
    codes: List[np.ndarray]
    scales: List[float]
    accumulators: Dict[int, np.ndarray]

    @property
    def activations(self) -> List[np.ndarray]:
        return self.codes[1:]


def quantize_inputs(model: QuantModel, x: np.ndarray) -> np.ndarray:
    """Quantize real inputs with the model's input parameters."""
    return quantize_array(x, model.input_params)


def mac_rows(weights: np.ndarray, rows: np.ndarray, cfg: MultiplierConfig) -> np.ndarray:
    """
    Integer ``rows @ weights.T`` with every product taken through ``cfg``.

    Args:
        weights: ``(O, K)`` signed weight codes
        rows: ``(R, K)`` signed data codes

    Returns:
        ``(R, O)`` int64 accumulators
    """
    out_features, depth = weights.shape
    result = np.zeros((rows.shape[0], out_features), dtype=np.int64)
    step = max(1, _BLOCK_ELEMENTS // max(1, out_features * depth))
    for start in range(0, rows.shape[0], step):
        block = rows[start:start + step]
        products = multiply_array(weights[None, :, :], block[:, None, :], cfg)
        result[start:start + step] = products.sum(axis=-1)
    return result


def _compute_layer(layer: QuantLayer, x: np.ndarray) -> np.ndarray:
    cfg = layer.multiplier
    if cfg is None:
        raise UnassignedSchemeError(f"layer '{layer.name}' has no multiplier scheme assigned")
    weights = layer.weight_codes
    if layer.kind == 'dense':
        acc = mac_rows(weights, x, cfg)
        return acc if layer.bias is None else acc + layer.bias
    spec = layer.spec
    stride = spec.effective_stride
    cols = kernels.im2col(x, spec.kernel, stride, spec.padding)
    n, positions, depth = cols.shape
    acc = mac_rows(weights.reshape(weights.shape[0], -1), cols.reshape(n * positions, depth), cfg)
    oh, ow = kernels.conv_output_hw(x.shape[2], x.shape[3], spec.kernel, stride, spec.padding)
    acc = acc.reshape(n, positions, -1).transpose(0, 2, 1).reshape(n, -1, oh, ow)
    return acc if layer.bias is None else acc + layer.bias[None, :, None, None]


def forward(model: QuantModel, x_codes: np.ndarray) -> ForwardResult:
    """
    Run a batch of quantized inputs through the model.

    Args:
        model: Quantized model with a multiplier on every compute layer
        x_codes: Signed input codes, shape ``(N, *input_shape)`` or a single
            sample of ``input_shape``

    Raises:
        ShapeMismatchError: If the input shape does not match the model
        UnassignedSchemeError: If a compute layer has no multiplier
    """
    x = np.asarray(x_codes, dtype=np.int64)
    if x.shape == tuple(model.input_shape):
        x = x[None]
    if x.shape[1:] != tuple(model.input_shape):
        raise ShapeMismatchError(f"input shape {x.shape[1:]} does not match model {model.input_shape}")

    codes = [x]
    scales = [model.input_params.scale]
    accumulators: Dict[int, np.ndarray] = {}

    for index, layer in enumerate(model.layers):
        current, scale = codes[-1], scales[-1]
        kind = layer.kind
        if layer.is_compute:
            acc = _compute_layer(layer, current)
            accumulators[index] = acc
            acc_scale = scale * layer.weight_params.scale
            if layer.out_params is None:
                out, out_scale = acc, acc_scale
            else:
                out = quantize_array(acc / acc_scale, layer.out_params)
                out_scale = layer.out_params.scale
        elif kind == 'relu':
            out, out_scale = np.maximum(current, 0), scale
        elif kind == 'maxpool':
            out, out_scale = kernels.max_pool(current, layer.spec.kernel, layer.spec.effective_stride), scale
        elif kind == 'avgpool':
            out, out_scale = kernels.avg_pool_int(current, layer.spec.kernel, layer.spec.effective_stride), scale
        elif kind == 'flatten':
            out, out_scale = current.reshape(current.shape[0], -1), scale
        else:
            skip = layer.spec.skip_from
            total = current / scale + codes[skip] / scales[skip]
            out = quantize_array(total, layer.out_params)
            out_scale = layer.out_params.scale
        codes.append(np.ascontiguousarray(out))
        scales.append(float(out_scale))

    scores = codes[-1].astype(np.float64) / scales[-1]
    return ForwardResult(scores=scores, codes=codes, scales=scales, accumulators=accumulators)


def predict(model: QuantModel, inputs: np.ndarray, batch_size: int = 256, workers: int = 1) -> np.ndarray:
    """
    Top-1 class per sample; ties resolve to the lowest class index.

    Batches may run on a thread pool; results are reassembled in input order,
    and the integer arithmetic makes them independent of ``workers``.
    """
    x_codes = quantize_inputs(model, inputs)
    batches = [x_codes[i:i + batch_size] for i in range(0, len(x_codes), batch_size)]

    def run(batch: np.ndarray) -> np.ndarray:
        return np.argmax(forward(model, batch).codes[-1].reshape(len(batch), -1), axis=1)

    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, batches))
    else:
        parts = [run(batch) for batch in batches]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def evaluate(model: QuantModel, inputs: np.ndarray, labels: np.ndarray, batch_size: int = 256, workers: int = 1) -> float:
    """
    Top-1 accuracy of the quantized model.

    Raises:
        EmptyDatasetError: If there are no samples
    """
    if len(labels) == 0:
        raise EmptyDatasetError("cannot evaluate on an empty dataset")
    predictions = predict(model, inputs, batch_size=batch_size, workers=workers)
    return float(np.mean(predictions == np.asarray(labels)))


def assign_scheme(model: QuantModel, cfg: Optional[MultiplierConfig]) -> QuantModel:
    """Same multiplier on every compute layer."""
    return model.with_plan([cfg] * len(model.compute_indices))
