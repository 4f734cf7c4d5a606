"""
Layer descriptions, shape inference and the real-valued reference network.

A network is an ordered layer chain. Tensor index 0 is the network input and
index ``i + 1`` is the output of layer ``i``; an ``add`` layer sums its input
with an earlier tensor (``skip_from``), which is enough for a residual block.
"""

import copy
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ShapeMismatchError
from . import kernels

COMPUTE_KINDS = ('dense', 'conv2d')
LAYER_KINDS = COMPUTE_KINDS + ('relu', 'maxpool', 'avgpool', 'flatten', 'add')

Shape = Tuple[int, ...]


@dataclass(frozen=True)
class LayerSpec:
    """Architecture of one layer (no parameters)."""

    kind: str
    units: int = 0
    kernel: int = 0
    stride: Optional[int] = None
    padding: int = 0
    skip_from: Optional[int] = None
    name: str = ''

    def __post_init__(self):
        if self.kind not in LAYER_KINDS:
            raise ShapeMismatchError(f"unknown layer kind '{self.kind}'")

    @property
    def is_compute(self) -> bool:
        return self.kind in COMPUTE_KINDS

    @property
    def effective_stride(self) -> int:
        if self.stride is not None:
            return self.stride
        return self.kernel if self.kind in ('maxpool', 'avgpool') else 1


def weight_shape(spec: LayerSpec, in_shape: Shape) -> Shape:
    if spec.kind == 'dense':
        return (spec.units, in_shape[0])
    return (spec.units, in_shape[0], spec.kernel, spec.kernel)


def infer_shapes(input_shape: Shape, specs: List[LayerSpec]) -> List[Shape]:
    """
    Per-tensor shapes (without batch axis) from the input through every layer.

    Raises:
        ShapeMismatchError: If any layer cannot consume its input shape
    """
    shapes: List[Shape] = [tuple(input_shape)]
    for index, spec in enumerate(specs):
        shape = shapes[-1]
        label = spec.name or f"layer {index}"
        if spec.kind == 'dense':
            if len(shape) != 1:
                raise ShapeMismatchError(f"{label}: dense layer needs a flat input, got {shape}")
            out = (spec.units,)
        elif spec.kind in ('conv2d', 'maxpool', 'avgpool'):
            if len(shape) != 3:
                raise ShapeMismatchError(f"{label}: {spec.kind} needs (C, H, W) input, got {shape}")
            padding = spec.padding if spec.kind == 'conv2d' else 0
            oh, ow = kernels.conv_output_hw(shape[1], shape[2], spec.kernel, spec.effective_stride, padding)
            if oh < 1 or ow < 1:
                raise ShapeMismatchError(f"{label}: window {spec.kernel} larger than input {shape}")
            channels = spec.units if spec.kind == 'conv2d' else shape[0]
            out = (channels, oh, ow)
        elif spec.kind == 'flatten':
            out = (int(np.prod(shape)),)
        elif spec.kind == 'add':
            if spec.skip_from is None or not 0 <= spec.skip_from <= index:
                raise ShapeMismatchError(f"{label}: skip_from must name an earlier tensor")
            if shapes[spec.skip_from] != shape:
                raise ShapeMismatchError(
                    f"{label}: cannot add {shapes[spec.skip_from]} to {shape}"
                )
            out = shape
        else:
            out = shape
        shapes.append(out)
    return shapes


@dataclass
class FloatNetwork:
    """Real-valued network: the training target and the float accuracy baseline."""

    input_shape: Shape
    layers: List[LayerSpec]
    weights: List[Optional[np.ndarray]]
    biases: List[Optional[np.ndarray]]
    masks: List[Optional[np.ndarray]]

    @classmethod
    def zeros(cls, input_shape: Shape, layers: List[LayerSpec]) -> "FloatNetwork":
        shapes = infer_shapes(input_shape, layers)
        weights, biases, masks = [], [], []
        for spec, in_shape in zip(layers, shapes):
            if spec.is_compute:
                shape = weight_shape(spec, in_shape)
                weights.append(np.zeros(shape))
                biases.append(np.zeros(spec.units))
                masks.append(np.ones(shape, dtype=bool))
            else:
                weights.append(None)
                biases.append(None)
                masks.append(None)
        return cls(tuple(input_shape), list(layers), weights, biases, masks)

    def copy(self) -> "FloatNetwork":
        return copy.deepcopy(self)

    @property
    def compute_indices(self) -> List[int]:
        return [i for i, spec in enumerate(self.layers) if spec.is_compute]

    def shapes(self) -> List[Shape]:
        return infer_shapes(self.input_shape, self.layers)

    def forward(self, x: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
        """
        Batch forward pass.

        Returns:
            Tuple of (final output, every intermediate tensor including input)
        """
        tensors = [np.asarray(x, dtype=np.float64)]
        for index, spec in enumerate(self.layers):
            tensors.append(self._forward_layer(index, spec, tensors))
        return tensors[-1], tensors

    def _forward_layer(self, index: int, spec: LayerSpec, tensors: List[np.ndarray]) -> np.ndarray:
        x = tensors[-1]
        if spec.kind == 'dense':
            w = self.weights[index] * self.masks[index]
            return x @ w.T + self.biases[index]
        if spec.kind == 'conv2d':
            w = self.weights[index] * self.masks[index]
            cols = kernels.im2col(x, spec.kernel, spec.effective_stride, spec.padding)
            out = cols @ w.reshape(w.shape[0], -1).T + self.biases[index]
            oh, ow = kernels.conv_output_hw(x.shape[2], x.shape[3], spec.kernel, spec.effective_stride, spec.padding)
            return out.transpose(0, 2, 1).reshape(x.shape[0], w.shape[0], oh, ow)
        if spec.kind == 'relu':
            return np.maximum(x, 0.0)
        if spec.kind == 'maxpool':
            return kernels.max_pool(x, spec.kernel, spec.effective_stride)
        if spec.kind == 'avgpool':
            return kernels.avg_pool(x, spec.kernel, spec.effective_stride)
        if spec.kind == 'flatten':
            return x.reshape(x.shape[0], -1)
        return x + tensors[spec.skip_from]

    def backward(self, tensors: List[np.ndarray], grad_out: np.ndarray) -> Tuple[Dict[int, np.ndarray], Dict[int, np.ndarray]]:
        """
        Gradients of a scalar loss given ``d loss / d output``.

        Returns:
            Tuple of (weight gradients, bias gradients) keyed by layer index;
            weight gradients are already masked
        """
        grads: Dict[int, np.ndarray] = {len(self.layers): grad_out}
        weight_grads: Dict[int, np.ndarray] = {}
        bias_grads: Dict[int, np.ndarray] = {}

        def accumulate(tensor_index: int, grad: np.ndarray) -> None:
            if tensor_index in grads:
                grads[tensor_index] = grads[tensor_index] + grad
            else:
                grads[tensor_index] = grad

        for index in range(len(self.layers) - 1, -1, -1):
            spec = self.layers[index]
            grad = grads.pop(index + 1, None)
            if grad is None:
                continue
            x = tensors[index]
            if spec.kind == 'dense':
                w = self.weights[index] * self.masks[index]
                weight_grads[index] = (grad.T @ x) * self.masks[index]
                bias_grads[index] = grad.sum(axis=0)
                accumulate(index, grad @ w)
            elif spec.kind == 'conv2d':
                w = self.weights[index] * self.masks[index]
                stride = spec.effective_stride
                cols = kernels.im2col(x, spec.kernel, stride, spec.padding)
                g = grad.reshape(grad.shape[0], grad.shape[1], -1).transpose(0, 2, 1)
                w2 = w.reshape(w.shape[0], -1)
                weight_grads[index] = np.einsum('npo,npk->ok', g, cols).reshape(w.shape) * self.masks[index]
                bias_grads[index] = g.sum(axis=(0, 1))
                accumulate(index, kernels.col2im(g @ w2, x.shape, spec.kernel, stride, spec.padding))
            elif spec.kind == 'relu':
                accumulate(index, grad * (x > 0))
            elif spec.kind == 'maxpool':
                accumulate(index, kernels.max_pool_backward(grad, x, spec.kernel, spec.effective_stride))
            elif spec.kind == 'avgpool':
                accumulate(index, kernels.avg_pool_backward(grad, x.shape, spec.kernel, spec.effective_stride))
            elif spec.kind == 'flatten':
                accumulate(index, grad.reshape(x.shape))
            else:
                accumulate(index, grad)
                accumulate(spec.skip_from, grad)
        return weight_grads, bias_grads

    def predict(self, x: np.ndarray) -> np.ndarray:
        out, _ = self.forward(x)
        return np.argmax(out, axis=1)

    def accuracy(self, x: np.ndarray, labels: np.ndarray) -> float:
        if len(labels) == 0:
            return 0.0
        return float(np.mean(self.predict(x) == labels))

    def weight_count(self) -> int:
        return int(sum(w.size for w in self.weights if w is not None))

    def surviving_count(self) -> int:
        return int(sum(m.sum() for m in self.masks if m is not None))

    def sparsity(self) -> float:
        total = self.weight_count()
        return 0.0 if total == 0 else 1.0 - self.surviving_count() / total
