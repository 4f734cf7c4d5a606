"""
Mixed-precision assignment of exact and approximate multipliers.
"""

from .profile import APPROX_FIRST, EXACT_FIRST, POLICIES, MacProfile, choose_policy, cumulative_mac_profile
from .search import MixedPlan, SweepPoint, boundary_sweep, select_boundary, select_point

__all__ = [
    'APPROX_FIRST',
    'EXACT_FIRST',
    'POLICIES',
    'MacProfile',
    'choose_policy',
    'cumulative_mac_profile',
    'MixedPlan',
    'SweepPoint',
    'boundary_sweep',
    'select_boundary',
    'select_point',
]
