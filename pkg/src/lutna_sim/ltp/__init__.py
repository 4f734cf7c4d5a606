"""
Lottery ticket pruning with a built-in real-valued trainer.
"""

from .pruning import LtpConfig, LtpResult, ltp_run, prune_round
from .trainer import RoundRecord, TrainState, init_network, learning_rate, train, xavier_init

__all__ = [
    'LtpConfig',
    'LtpResult',
    'ltp_run',
    'prune_round',
    'RoundRecord',
    'TrainState',
    'init_network',
    'learning_rate',
    'train',
    'xavier_init',
]
