"""
Configuration comparison and model-level energy reports.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from ..arith.lutcore import MultiplierConfig
from ..errors import ConfigError, PlanMismatchError, UnassignedSchemeError
from ..netsim.model import QuantModel, layer_mac_counts
from ..netsim.network import Shape
from .components import ComponentCount, component_count
from .references import REFERENCE_NOTE, headline_ratio
from .unit_costs import UnitCosts, area, energy_per_mac

COMPARE_COLUMNS = [
    'config', 'sram', 'mux', 'ha', 'fa', 'xor', 'and',
    'area', 'energy_per_mac', 'ratio_to_baseline', 'energy_ratio_to_baseline',
    'published_area_ratio', 'published_energy_ratio', 'reference_note',
]


@dataclass(frozen=True)
class CostReport:
    """
    Cost of one multiplier configuration, optionally inside a model.

    ``total_macs`` and ``energy_per_inference`` are only set for model-level
    reports.
    """

    config_id: str
    counts: ComponentCount
    area_units: float
    energy_per_mac_units: float
    total_macs: Optional[int] = None
    energy_per_inference_units: Optional[float] = None


def config_report(cfg: MultiplierConfig, costs: UnitCosts) -> CostReport:
    return CostReport(
        config_id=cfg.config_id,
        counts=component_count(cfg),
        area_units=area(cfg, costs),
        energy_per_mac_units=energy_per_mac(cfg, costs),
    )


def _resolve_plan(model: QuantModel, plan: Optional[Sequence[MultiplierConfig]]) -> List[MultiplierConfig]:
    plan = model.plan() if plan is None else list(plan)
    if len(plan) != len(model.compute_indices):
        raise PlanMismatchError(
            f"plan has {len(plan)} entries for {len(model.compute_indices)} compute layers"
        )
    for index, cfg in zip(model.compute_indices, plan):
        if cfg is None:
            raise UnassignedSchemeError(f"layer '{model.layers[index].name}' has no multiplier scheme assigned")
    return plan


def energy_per_inference(
    model: QuantModel,
    costs: UnitCosts,
    plan: Optional[Sequence[MultiplierConfig]] = None,
    input_shape: Optional[Shape] = None,
) -> float:
    """
    Energy of one inference: surviving MACs times per-MAC energy, per layer.

    Args:
        model: Quantized model (masks decide the MAC counts)
        costs: Unit energies
        plan: One multiplier per compute layer (defaults to the model's own)

    Raises:
        PlanMismatchError: If the plan length differs from the layer count
    """
    plan = _resolve_plan(model, plan)
    macs = layer_mac_counts(model, input_shape)
    return float(sum(count * energy_per_mac(cfg, costs) for count, cfg in zip(macs, plan)))


def plan_area(plan: Sequence[MultiplierConfig], costs: UnitCosts) -> float:
    """Area of one multiplier instance per compute layer."""
    return float(sum(area(cfg, costs) for cfg in plan))


def model_report(
    model: QuantModel,
    costs: UnitCosts,
    plan: Optional[Sequence[MultiplierConfig]] = None,
) -> CostReport:
    """
    Model-level report; counts and area add up one instance per compute layer.
    """
    plan = _resolve_plan(model, plan)
    counts = ComponentCount()
    for cfg in plan:
        counts = counts + component_count(cfg)
    ids = sorted({cfg.config_id for cfg in plan})
    return CostReport(
        config_id='+'.join(ids),
        counts=counts,
        area_units=plan_area(plan, costs),
        energy_per_mac_units=energy_per_mac(counts, costs) / max(1, len(plan)),
        total_macs=int(sum(layer_mac_counts(model))),
        energy_per_inference_units=energy_per_inference(model, costs, plan),
    )


def compare_report(
    cfgs: Sequence[MultiplierConfig],
    costs: UnitCosts,
    baseline_id: Optional[str] = None,
) -> List[Dict[str, Any]]:
    """
    Per-configuration counts, absolute costs and ratios to a baseline.

    Rows keep the input order with duplicates dropped. Ratios are
    ``row / baseline``. Where a published 8b headline figure exists for the
    (row, baseline) pair it is attached as a reference column.

    Args:
        cfgs: Configurations to compare
        costs: Unit costs
        baseline_id: Config id of the baseline (defaults to the first config)

    Returns:
        List of row dictionaries keyed by :data:`COMPARE_COLUMNS`

    Raises:
        ConfigError: If the list is empty or the baseline is not in it
    """
    unique: Dict[str, MultiplierConfig] = {}
    for cfg in cfgs:
        unique.setdefault(cfg.config_id, cfg)
    if not unique:
        raise ConfigError("no configurations to compare")
    baseline_id = baseline_id or next(iter(unique))
    if baseline_id not in unique:
        raise ConfigError(f"baseline '{baseline_id}' is not among the compared configurations")

    base = config_report(unique[baseline_id], costs)
    base_cfg = unique[baseline_id]
    rows = []
    for cfg in unique.values():
        report = config_report(cfg, costs)
        counts = report.counts
        published = None
        if cfg.config_id != baseline_id:
            published = headline_ratio(cfg.scheme.value, cfg.data_bits, base_cfg.scheme.value, base_cfg.data_bits)
        rows.append({
            'config': report.config_id,
            'sram': counts.sram_cells,
            'mux': counts.mux2x1_1b,
            'ha': counts.half_adders,
            'fa': counts.full_adders,
            'xor': counts.xor_gates,
            'and': counts.and_gates,
            'area': report.area_units,
            'energy_per_mac': report.energy_per_mac_units,
            'ratio_to_baseline': _ratio(report.area_units, base.area_units),
            'energy_ratio_to_baseline': _ratio(report.energy_per_mac_units, base.energy_per_mac_units),
            'published_area_ratio': '' if published is None else published[0],
            'published_energy_ratio': '' if published is None else published[1],
            'reference_note': '' if published is None else REFERENCE_NOTE,
        })
    return rows


def _ratio(value: float, base: float) -> float:
    if base == 0:
        return 1.0 if value == 0 else float('inf')
    return value / base
