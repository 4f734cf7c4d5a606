"""
Post-training quantization of a real-valued network, and the reverse mapping.

Weights get per-tensor max-abs scales; activation scales are calibrated once
on a calibration split by running the real-valued network and are then fixed.
"""

from typing import List, Optional

import numpy as np

from ..arith.fixedpoint import (
    calibrate_scale,
    dequantize_array,
    quantize_array,
    round_half_away,
)
from ..arith.lutcore import MultiplierConfig, Scheme
from ..errors import EmptyDatasetError
from .model import QuantLayer, QuantModel
from .network import FloatNetwork


def quantize_network(
    net: FloatNetwork,
    calib_inputs: np.ndarray,
    act_bits: int = 8,
    weight_bits: int = 8,
    scheme: Scheme = Scheme.DNC_EXACT,
    name: str = 'model',
    provenance: Optional[dict] = None,
) -> QuantModel:
    """
    Quantize ``net`` into a :class:`QuantModel`.

    Args:
        net: Trained real-valued network (masks applied)
        calib_inputs: Calibration samples used for every static scale
        act_bits: Activation magnitude width
        weight_bits: Weight magnitude width
        scheme: Multiplier scheme assigned to every compute layer

    Returns:
        Quantized model; the last layer emits raw accumulators when it is a
        compute layer
    """
    calib = np.asarray(calib_inputs, dtype=np.float64)
    if len(calib) == 0:
        raise EmptyDatasetError("calibration split is empty")
    input_params = calibrate_scale(calib, act_bits)
    _, tensors = net.forward(calib)
    multiplier = MultiplierConfig.for_bits(scheme, act_bits, weight_bits)

    scales = [input_params.scale]
    layers: List[QuantLayer] = []
    last = len(net.layers) - 1
    for index, spec in enumerate(net.layers):
        in_scale = scales[-1]
        if spec.is_compute:
            mask = net.masks[index].copy()
            weights = net.weights[index] * mask
            weight_params = calibrate_scale(weights, weight_bits)
            codes = quantize_array(weights, weight_params)
            codes[~mask] = 0
            bias = round_half_away(net.biases[index] * in_scale * weight_params.scale)
            out_params = None if index == last else calibrate_scale(tensors[index + 1], act_bits)
            layers.append(QuantLayer(
                spec=spec,
                weight_codes=codes,
                weight_params=weight_params,
                mask=mask,
                bias=bias,
                out_params=out_params,
                multiplier=multiplier,
            ))
            scales.append(in_scale * weight_params.scale if out_params is None else out_params.scale)
        elif spec.kind == 'add':
            out_params = calibrate_scale(tensors[index + 1], act_bits)
            layers.append(QuantLayer(spec=spec, out_params=out_params))
            scales.append(out_params.scale)
        else:
            layers.append(QuantLayer(spec=spec))
            scales.append(in_scale)

    return QuantModel(
        name=name,
        input_shape=tuple(net.input_shape),
        input_params=input_params,
        layers=layers,
        act_bits=act_bits,
        weight_bits=weight_bits,
        provenance=dict(provenance or {}),
    )


def tensor_scales(model: QuantModel) -> List[float]:
    """Static scale of every tensor (input first) of a quantized model."""
    scales = [model.input_params.scale]
    for layer in model.layers:
        if layer.is_compute:
            if layer.out_params is None:
                scales.append(scales[-1] * layer.weight_params.scale)
            else:
                scales.append(layer.out_params.scale)
        elif layer.kind == 'add':
            scales.append(layer.out_params.scale)
        else:
            scales.append(scales[-1])
    return scales


def to_float_network(model: QuantModel) -> FloatNetwork:
    """
    Real-valued network carrying the model's dequantized weights and biases.

    This is the real-arithmetic reference of a stored model and the starting
    point for re-quantizing it at other bit widths.
    """
    net = FloatNetwork.zeros(model.input_shape, model.specs)
    scales = tensor_scales(model)
    for index in model.compute_indices:
        layer = model.layers[index]
        net.weights[index] = dequantize_array(layer.weight_codes, layer.weight_params)
        net.masks[index] = layer.mask.copy()
        acc_scale = scales[index] * layer.weight_params.scale
        net.biases[index] = np.asarray(layer.bias, dtype=np.float64) / acc_scale
    return net


def model_for_config(model: QuantModel, calib_inputs: np.ndarray, cfg: MultiplierConfig) -> QuantModel:
    """
    ``model`` running ``cfg`` on every compute layer.

    When the config's datapath is narrower or wider than the model's, the
    model is re-quantized at the config's widths first.
    """
    datapath = MultiplierConfig.for_bits(Scheme.DNC_EXACT, model.act_bits, model.weight_bits)
    if (datapath.data_bits, datapath.weight_bits) != (cfg.data_bits, cfg.weight_bits):
        model = quantize_network(
            to_float_network(model),
            calib_inputs,
            act_bits=cfg.data_bits,
            weight_bits=cfg.weight_bits,
            scheme=cfg.scheme,
            name=model.name,
            provenance=model.provenance,
        )
    return model.with_plan([cfg] * len(model.compute_indices))
