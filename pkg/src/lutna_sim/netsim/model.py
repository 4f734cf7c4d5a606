"""
Quantized model: integer weights, prune masks, static activation scales and a
multiplier assignment per compute layer.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..arith.fixedpoint import QuantParams
from ..arith.lutcore import MultiplierConfig
from ..errors import PlanMismatchError
from .network import LayerSpec, Shape, infer_shapes
from . import kernels


@dataclass
class QuantLayer:
    """
    One layer of a quantized model.

    ``weight_codes`` hold signed integer codes with pruned positions forced to
    zero. ``bias`` is stored at accumulator precision (input scale times
    weight scale). ``out_params`` is the static requantization target; a
    compute layer without it emits its raw accumulator (used for class scores).
    """

    spec: LayerSpec
    weight_codes: Optional[np.ndarray] = None
    weight_params: Optional[QuantParams] = None
    mask: Optional[np.ndarray] = None
    bias: Optional[np.ndarray] = None
    out_params: Optional[QuantParams] = None
    multiplier: Optional[MultiplierConfig] = None

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def is_compute(self) -> bool:
        return self.spec.is_compute


@dataclass
class QuantModel:
    """Layer chain with quantized weights and per-layer multiplier schemes."""

    name: str
    input_shape: Shape
    input_params: QuantParams
    layers: List[QuantLayer]
    act_bits: int = 8
    weight_bits: int = 8
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def specs(self) -> List[LayerSpec]:
        return [layer.spec for layer in self.layers]

    @property
    def compute_indices(self) -> List[int]:
        return [i for i, layer in enumerate(self.layers) if layer.is_compute]

    @property
    def compute_layers(self) -> List[QuantLayer]:
        return [self.layers[i] for i in self.compute_indices]

    def shapes(self) -> List[Shape]:
        return infer_shapes(self.input_shape, self.specs)

    def plan(self) -> List[Optional[MultiplierConfig]]:
        return [layer.multiplier for layer in self.compute_layers]

    def with_plan(self, plan: Sequence[MultiplierConfig]) -> "QuantModel":
        """
        Copy of the model with one multiplier config per compute layer.

        Raises:
            PlanMismatchError: If the plan length differs from the number of
                compute layers
        """
        indices = self.compute_indices
        if len(plan) != len(indices):
            raise PlanMismatchError(
                f"plan has {len(plan)} entries for {len(indices)} compute layers"
            )
        layers = list(self.layers)
        for index, cfg in zip(indices, plan):
            layers[index] = dataclasses.replace(layers[index], multiplier=cfg)
        return dataclasses.replace(self, layers=layers)

    def weight_count(self) -> int:
        return int(sum(layer.mask.size for layer in self.compute_layers))

    def surviving_count(self) -> int:
        return int(sum(layer.mask.sum() for layer in self.compute_layers))

    def sparsity(self) -> float:
        total = self.weight_count()
        return 0.0 if total == 0 else 1.0 - self.surviving_count() / total


def layer_mac_counts(model: QuantModel, input_shape: Optional[Shape] = None) -> List[int]:
    """
    Surviving MACs per compute layer for one inference.

    A MAC whose weight is pruned costs nothing; conv layers perform one MAC
    per surviving weight per output position.
    """
    shapes = infer_shapes(input_shape or model.input_shape, model.specs)
    counts = []
    for index in model.compute_indices:
        layer = model.layers[index]
        surviving = int(np.count_nonzero(layer.mask))
        if layer.kind == 'dense':
            counts.append(surviving)
        else:
            in_shape = shapes[index]
            oh, ow = kernels.conv_output_hw(
                in_shape[1], in_shape[2], layer.spec.kernel,
                layer.spec.effective_stride, layer.spec.padding,
            )
            counts.append(surviving * oh * ow)
    return counts
