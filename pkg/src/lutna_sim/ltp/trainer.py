"""
Small deterministic SGD trainer for real-valued networks.

Training never sees quantization; the multiplier schemes only apply at
inference time.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigError, TrainingDivergedError
from ..netsim.network import FloatNetwork, LayerSpec, Shape

DEFAULT_LEARNING_RATE = 0.1
DEFAULT_BATCH_SIZE = 16


def xavier_init(shape: Sequence[int], rng: np.random.Generator) -> np.ndarray:
    """
    Xavier-uniform weights on ``[-sqrt(6 / (fan_in + fan_out)), +...]``.

    Dense weights are ``(out, in)``; conv weights are ``(out, in, k, k)``
    with both fans scaled by the receptive field.

    Raises:
        ConfigError: If either fan is zero or the shape is not 2-D or 4-D
    """
    shape = tuple(int(s) for s in shape)
    if len(shape) == 2:
        fan_out, fan_in = shape
    elif len(shape) == 4:
        receptive = shape[2] * shape[3]
        fan_out, fan_in = shape[0] * receptive, shape[1] * receptive
    else:
        raise ConfigError(f"cannot derive fans from weight shape {shape}")
    if fan_in == 0 or fan_out == 0:
        raise ConfigError(f"weight shape {shape} has a zero fan")
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


def init_network(input_shape: Shape, layers: List[LayerSpec], rng: np.random.Generator) -> FloatNetwork:
    """Network with Xavier weights, zero biases and full masks."""
    net = FloatNetwork.zeros(input_shape, layers)
    for index in net.compute_indices:
        net.weights[index] = xavier_init(net.weights[index].shape, rng)
    return net


@dataclass(frozen=True)
class RoundRecord:
    """One line of the pruning log."""

    round: int
    sparsity: float
    train_acc: float
    val_acc: float


@dataclass
class TrainState:
    """
    Weights, their rewind targets and the prune masks (inside ``net``).

    ``initial_weights`` holds the values surviving weights are rewound to
    after each pruning round.
    """

    net: FloatNetwork
    initial_weights: List[Optional[np.ndarray]]
    round_index: int = 0
    log: List[RoundRecord] = field(default_factory=list)

    @classmethod
    def start(cls, net: FloatNetwork) -> "TrainState":
        return cls(net=net.copy(), initial_weights=[None if w is None else w.copy() for w in net.weights])


def _cross_entropy(logits: np.ndarray, labels: np.ndarray) -> Tuple[float, np.ndarray]:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    probs = exp / exp.sum(axis=1, keepdims=True)
    n = len(labels)
    loss = float(-np.mean(np.log(probs[np.arange(n), labels] + 1e-12)))
    grad = probs
    grad[np.arange(n), labels] -= 1.0
    return loss, grad / n


def learning_rate(epoch: int, epochs: int, base: float = DEFAULT_LEARNING_RATE) -> float:
    """Halve the rate after each third of the epochs."""
    return base * 0.5 ** ((3 * epoch) // max(1, epochs))


def train(
    state: TrainState,
    inputs: np.ndarray,
    labels: np.ndarray,
    epochs: int,
    learning_rate_base: float = DEFAULT_LEARNING_RATE,
    batch_size: int = DEFAULT_BATCH_SIZE,
) -> TrainState:
    """
    Minibatch SGD on softmax cross-entropy, samples in dataset order.

    Pruned weights and their gradients are zeroed on every step.

    Args:
        state: Starting state (not modified)
        inputs: Real-valued samples
        labels: Integer class labels
        epochs: Passes over the data; 0 returns the state unchanged

    Returns:
        New state with updated weights

    Raises:
        TrainingDivergedError: If the loss becomes non-finite
    """
    if epochs <= 0:
        return state
    net = state.net.copy()
    x = np.asarray(inputs, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    for epoch in range(epochs):
        lr = learning_rate(epoch, epochs, learning_rate_base)
        for start in range(0, len(x), batch_size):
            out, tensors = net.forward(x[start:start + batch_size])
            loss, grad = _cross_entropy(out, y[start:start + batch_size])
            if not np.isfinite(loss):
                raise TrainingDivergedError(
                    f"round {state.round_index}, epoch {epoch}: loss is not finite"
                )
            weight_grads, bias_grads = net.backward(tensors, grad)
            for index, g in weight_grads.items():
                net.weights[index] = (net.weights[index] - lr * g) * net.masks[index]
                net.biases[index] = net.biases[index] - lr * bias_grads[index]
    return dataclasses.replace(state, net=net)
