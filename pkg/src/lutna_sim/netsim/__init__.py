"""
Quantized inference engine with pluggable multiplier schemes.
"""

from .architectures import ARCHITECTURE_REGISTRY
from .builder import model_for_config, quantize_network, tensor_scales, to_float_network
from .engine import ForwardResult, assign_scheme, evaluate, forward, predict, quantize_inputs
from .model import QuantLayer, QuantModel, layer_mac_counts
from .network import FloatNetwork, LayerSpec, infer_shapes
from .sweep import BitSweepPoint, bit_sweep
from .stats import ActivationHistogram, activation_histogram, lsb_product_distribution, weight_histogram

__all__ = [
    'ARCHITECTURE_REGISTRY',
    'model_for_config',
    'quantize_network',
    'tensor_scales',
    'to_float_network',
    'ForwardResult',
    'assign_scheme',
    'evaluate',
    'forward',
    'predict',
    'quantize_inputs',
    'QuantLayer',
    'QuantModel',
    'layer_mac_counts',
    'FloatNetwork',
    'LayerSpec',
    'infer_shapes',
    'BitSweepPoint',
    'bit_sweep',
    'ActivationHistogram',
    'activation_histogram',
    'lsb_product_distribution',
    'weight_histogram',
]
