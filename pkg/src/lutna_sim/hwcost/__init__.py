"""
Component-count, area and energy cost model.
"""

from .components import ComponentCount, component_count
from .references import REFERENCE_NOTE, headline_ratio
from .report import COMPARE_COLUMNS, CostReport, compare_report, energy_per_inference, model_report, plan_area
from .unit_costs import UnitCosts, area, energy_per_mac, load_unit_costs

__all__ = [
    'ComponentCount',
    'component_count',
    'REFERENCE_NOTE',
    'headline_ratio',
    'COMPARE_COLUMNS',
    'CostReport',
    'compare_report',
    'energy_per_inference',
    'model_report',
    'plan_area',
    'UnitCosts',
    'area',
    'energy_per_mac',
    'load_unit_costs',
]
