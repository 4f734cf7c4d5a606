"""
Boundary-layer search between exact and approximate D&C multipliers.

A plan runs one scheme on the first ``n`` compute layers and the other on the
rest. The sweep evaluates every ``n`` and the selection picks the cheapest
plan that stays within the accuracy-loss budget.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..arith.lutcore import MultiplierConfig, Scheme
from ..errors import ConfigError, NoFeasiblePlanError
from ..hwcost.report import energy_per_inference, plan_area
from ..hwcost.unit_costs import UnitCosts
from ..netsim.engine import evaluate
from ..netsim.model import QuantModel
from .profile import APPROX_FIRST, POLICIES

# Accuracy comparisons tolerate float noise from the mean over samples.
_ACCURACY_EPS = 1e-12


@dataclass(frozen=True)
class MixedPlan:
    """Contiguous-prefix assignment of exact and approximate multipliers."""

    policy: str
    boundary: int
    layer_count: int
    act_bits: int = 8
    weight_bits: int = 8
    approx_split: Optional[int] = None

    def __post_init__(self):
        if self.policy not in POLICIES:
            raise ConfigError(f"policy must be one of {', '.join(POLICIES)}, got '{self.policy}'")
        if not 0 <= self.boundary <= self.layer_count:
            raise ConfigError(f"boundary {self.boundary} outside [0, {self.layer_count}]")

    def schemes(self) -> List[Scheme]:
        first, rest = (
            (Scheme.DNC_APPROX, Scheme.DNC_EXACT) if self.policy == APPROX_FIRST
            else (Scheme.DNC_EXACT, Scheme.DNC_APPROX)
        )
        return [first if i < self.boundary else rest for i in range(self.layer_count)]

    def configs(self) -> List[MultiplierConfig]:
        exact = MultiplierConfig.for_bits(Scheme.DNC_EXACT, self.act_bits, self.weight_bits)
        approx = MultiplierConfig.for_bits(
            Scheme.DNC_APPROX, self.act_bits, self.weight_bits, approx_split=self.approx_split
        )
        return [exact if s == Scheme.DNC_EXACT else approx for s in self.schemes()]


@dataclass(frozen=True)
class SweepPoint:
    plan: MixedPlan
    accuracy: float
    energy: float
    area: float

    @property
    def n(self) -> int:
        return self.plan.boundary


def boundary_sweep(
    model: QuantModel,
    inputs: np.ndarray,
    labels: np.ndarray,
    policy: str,
    costs: UnitCosts,
    approx_split: Optional[int] = None,
    workers: int = 1,
    on_point: Optional[Callable[[SweepPoint], None]] = None,
) -> List[SweepPoint]:
    """
    Evaluate every boundary ``n`` in ``0..layer_count`` under ``policy``.

    Args:
        model: Quantized model
        inputs: Evaluation samples
        labels: Evaluation labels
        policy: 'approx_first' or 'exact_first'
        costs: Unit costs for energy and area
        workers: Number of sweep points evaluated concurrently

    Returns:
        One point per boundary, ordered by ``n``
    """
    layer_count = len(model.compute_indices)
    plans = [
        MixedPlan(policy, n, layer_count, model.act_bits, model.weight_bits, approx_split)
        for n in range(layer_count + 1)
    ]

    def run(plan: MixedPlan) -> SweepPoint:
        cfgs = plan.configs()
        return SweepPoint(
            plan=plan,
            accuracy=evaluate(model.with_plan(cfgs), inputs, labels),
            energy=energy_per_inference(model, costs, cfgs),
            area=plan_area(cfgs, costs),
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(run, plans))
    else:
        points = [run(plan) for plan in plans]
    if on_point is not None:
        for point in points:
            on_point(point)
    return points


def select_point(
    points: Sequence[SweepPoint],
    baseline_accuracy: float,
    max_loss: float = 0.01,
) -> SweepPoint:
    """
    Minimum-energy point whose accuracy is within ``max_loss`` of the
    baseline; ties go to smaller area, then smaller ``n``.

    Raises:
        ConfigError: If there are no points
        NoFeasiblePlanError: If no point meets the budget
    """
    if not points:
        raise ConfigError("sweep is empty")
    floor = baseline_accuracy - max_loss - _ACCURACY_EPS
    feasible = [p for p in points if p.accuracy >= floor]
    if not feasible:
        best_loss = baseline_accuracy - max(p.accuracy for p in points)
        raise NoFeasiblePlanError(
            f"no plan within {max_loss:.4f} accuracy loss; best achievable loss is {best_loss:.4f}"
        )
    return min(feasible, key=lambda p: (p.energy, p.area, p.n))


def select_boundary(
    points: Sequence[SweepPoint],
    baseline_accuracy: float,
    max_loss: float = 0.01,
) -> MixedPlan:
    return select_point(points, baseline_accuracy, max_loss).plan
