"""
Lottery ticket pruning: train, magnitude-prune, rewind, repeat.

The loop keeps pruning while the validation accuracy stays within the drop
limit of the unpruned baseline, then trains the final sparse network once
more and quantizes it.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ..arith.lutcore import Scheme
from ..errors import ConfigError, PruneError
from ..modelio.datasets import Dataset
from ..netsim.architectures import ARCHITECTURE_REGISTRY
from ..netsim.builder import quantize_network
from ..netsim.model import QuantModel
from ..netsim.network import FloatNetwork
from .trainer import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_LEARNING_RATE,
    RoundRecord,
    TrainState,
    init_network,
    train,
    xavier_init,
)

PRUNE_MODES = ('global', 'layer')
REWIND_MODES = ('original', 'random')


@dataclass(frozen=True)
class LtpConfig:
    """
    Knobs of one pruning run.

    ``max_rounds`` may be 0, which trains the unpruned network only.
    """

    prune_percent: float = 0.2
    max_rounds: int = 10
    epochs_per_round: int = 20
    accuracy_drop_limit: float = 0.01
    seed: int = 0
    mode: str = 'global'
    rewind: str = 'original'
    act_bits: int = 8
    weight_bits: int = 8
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE

    def __post_init__(self):
        if not 0.0 < self.prune_percent < 1.0:
            raise ConfigError(f"prune percent must be in (0, 1), got {self.prune_percent}")
        if self.max_rounds < 0:
            raise ConfigError(f"max rounds cannot be negative, got {self.max_rounds}")
        if self.epochs_per_round < 1:
            raise ConfigError(f"epochs per round must be at least 1, got {self.epochs_per_round}")
        if self.accuracy_drop_limit < 0:
            raise ConfigError(f"accuracy drop limit cannot be negative, got {self.accuracy_drop_limit}")
        if self.mode not in PRUNE_MODES:
            raise ConfigError(f"prune mode must be one of {', '.join(PRUNE_MODES)}")
        if self.rewind not in REWIND_MODES:
            raise ConfigError(f"rewind must be one of {', '.join(REWIND_MODES)}")


@dataclass
class LtpResult:
    """Trained sparse network, its quantized form and the round log."""

    net: FloatNetwork
    model: QuantModel
    log: List[RoundRecord] = field(default_factory=list)
    baseline_accuracy: float = 0.0
    final_accuracy: float = 0.0

    @property
    def sparsity(self) -> float:
        return self.net.sparsity()

    @property
    def rounds(self) -> int:
        return len(self.log) - 1


def _prune_count(surviving: int, p: float) -> int:
    k = int(np.floor(p * surviving + 0.5))
    if k >= surviving:
        raise PruneError(f"pruning {p:.0%} of {surviving} surviving weights would remove all of them")
    return k


def _prune_lowest(magnitudes: np.ndarray, k: int) -> np.ndarray:
    # Stable sort: equal magnitudes are pruned in index order.
    return np.argsort(magnitudes, kind='stable')[:k]


def _drop(net: FloatNetwork, index: int, flat_positions: np.ndarray) -> None:
    mask = net.masks[index].copy().ravel()
    mask[flat_positions] = False
    net.masks[index] = mask.reshape(net.masks[index].shape)


def prune_round(
    state: TrainState,
    p: float,
    mode: str = 'global',
    rewind: str = 'original',
    rng: Optional[np.random.Generator] = None,
) -> TrainState:
    """
    Mask the lowest-magnitude ``p`` fraction of surviving weights and rewind.

    Survivors are reset to their rewind values: the original initialization
    by default, or a fresh Xavier draw (which becomes the new rewind target)
    when ``rewind='random'``. Biases reset to zero.

    Args:
        state: Current state (not modified)
        p: Fraction of the surviving weights to prune
        mode: 'global' ranks across every layer; 'layer' prunes each layer
            by the same fraction

    Raises:
        PruneError: If the round would leave no surviving weight
    """
    net = state.net.copy()
    indices = net.compute_indices
    if mode == 'global':
        flat_positions = [np.flatnonzero(net.masks[i]) for i in indices]
        magnitudes = np.concatenate([
            np.abs(net.weights[i].ravel()[pos]) for i, pos in zip(indices, flat_positions)
        ])
        k = _prune_count(magnitudes.size, p)
        doomed = _prune_lowest(magnitudes, k)
        offsets = np.cumsum([0] + [pos.size for pos in flat_positions])
        for layer_no, index in enumerate(indices):
            lo, hi = offsets[layer_no], offsets[layer_no + 1]
            local = doomed[(doomed >= lo) & (doomed < hi)] - lo
            _drop(net, index, flat_positions[layer_no][local])
    else:
        for index in indices:
            positions = np.flatnonzero(net.masks[index])
            k = _prune_count(positions.size, p)
            doomed = _prune_lowest(np.abs(net.weights[index].ravel()[positions]), k)
            _drop(net, index, positions[doomed])

    initial = list(state.initial_weights)
    for index in indices:
        if rewind == 'random':
            if rng is None:
                raise ConfigError("random rewind needs a random generator")
            initial[index] = xavier_init(net.weights[index].shape, rng)
        net.weights[index] = initial[index] * net.masks[index]
        net.biases[index] = np.zeros_like(net.biases[index])
    return dataclasses.replace(
        state, net=net, initial_weights=initial, round_index=state.round_index + 1
    )


def ltp_run(
    architecture: str,
    train_set: Dataset,
    val_set: Dataset,
    cfg: LtpConfig,
    on_round: Optional[Callable[[RoundRecord], None]] = None,
) -> LtpResult:
    """
    Full pruning loop on a freshly initialized network.

    Round 0 of the log is the unpruned baseline. Every later round prunes,
    rewinds and retrains; the loop stops after ``max_rounds`` or once the
    validation accuracy has dropped by at least the limit. The final sparse
    network gets one more training pass before quantization.

    Args:
        architecture: Name in the architecture registry
        train_set: Training (and calibration) samples
        val_set: Samples the accuracy drop is measured on
        cfg: Run configuration
        on_round: Called with every log record as it is produced

    Returns:
        :class:`LtpResult` with the quantized model (D&C exact multipliers)
    """
    rng = np.random.default_rng(cfg.seed)
    layers = ARCHITECTURE_REGISTRY.build(architecture, train_set.input_shape, train_set.n_classes)
    state = TrainState.start(init_network(train_set.input_shape, layers, rng))

    def fit(s: TrainState) -> TrainState:
        return train(
            s, train_set.x, train_set.y, cfg.epochs_per_round,
            learning_rate_base=cfg.learning_rate, batch_size=cfg.batch_size,
        )

    def record(s: TrainState) -> RoundRecord:
        entry = RoundRecord(
            round=s.round_index,
            sparsity=s.net.sparsity(),
            train_acc=s.net.accuracy(train_set.x, train_set.y),
            val_acc=s.net.accuracy(val_set.x, val_set.y),
        )
        s.log.append(entry)
        if on_round is not None:
            on_round(entry)
        return entry

    state = fit(state)
    baseline = record(state).val_acc

    while state.round_index < cfg.max_rounds:
        state = prune_round(state, cfg.prune_percent, cfg.mode, cfg.rewind, rng)
        state = fit(state)
        if baseline - record(state).val_acc >= cfg.accuracy_drop_limit:
            break

    if state.round_index > 0:
        state = fit(state)
    final_accuracy = state.net.accuracy(val_set.x, val_set.y)

    model = quantize_network(
        state.net,
        train_set.x,
        act_bits=cfg.act_bits,
        weight_bits=cfg.weight_bits,
        scheme=Scheme.DNC_EXACT,
        name=architecture,
        provenance={
            'architecture': architecture,
            'dataset': train_set.name,
            'seed': cfg.seed,
            'prune_percent': cfg.prune_percent,
            'rounds': state.round_index,
            'epochs_per_round': cfg.epochs_per_round,
            'mode': cfg.mode,
            'rewind': cfg.rewind,
        },
    )
    return LtpResult(
        net=state.net,
        model=model,
        log=list(state.log),
        baseline_accuracy=baseline,
        final_accuracy=final_accuracy,
    )
