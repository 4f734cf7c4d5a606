"""
Command modules for the LUT-NA simulator CLI.

This module provides all the individual CLI commands.
"""

from .act_stats import act_stats
from .bit_sweep import bit_sweep
from .cost_report import cost_report
from .ltp import ltp
from .mixed_search import mixed_search
from .mul_verify import mul_verify
from .simulate import simulate

__all__ = [
    'act_stats',
    'bit_sweep',
    'cost_report',
    'ltp',
    'mixed_search',
    'mul_verify',
    'simulate',
]
