"""
Tests for the MAC profile, policy choice and boundary search
"""

import numpy as np
import pytest

from lutna_sim.arith.fixedpoint import QuantParams
from lutna_sim.arith.lutcore import MultiplierConfig, Scheme
from lutna_sim.errors import ConfigError, NoFeasiblePlanError
from lutna_sim.hwcost import load_unit_costs
from lutna_sim.mixedprec import (
    APPROX_FIRST,
    EXACT_FIRST,
    MacProfile,
    MixedPlan,
    SweepPoint,
    boundary_sweep,
    choose_policy,
    cumulative_mac_profile,
    select_boundary,
    select_point,
)
from lutna_sim.netsim import (
    ARCHITECTURE_REGISTRY,
    FloatNetwork,
    LayerSpec,
    QuantLayer,
    QuantModel,
    evaluate,
    layer_mac_counts,
    predict,
    quantize_network,
)


@pytest.fixture(scope='module')
def mlp_model():
    rng = np.random.default_rng(0)
    net = FloatNetwork.zeros((4,), ARCHITECTURE_REGISTRY.build('mlp', (4,), 3))
    for index in net.compute_indices:
        net.weights[index] = rng.normal(0.0, 0.5, net.weights[index].shape)
    x = rng.normal(size=(40, 4))
    y = net.predict(x)
    return quantize_network(net, x), x, y


def point(n: int, accuracy: float, energy: float, area: float = 1.0) -> SweepPoint:
    return SweepPoint(MixedPlan(APPROX_FIRST, n, 4), accuracy, energy, area)


def lsb_sensitive_model() -> QuantModel:
    """
    4-bit dense -> dense model whose first layer only ever sees data below 4.

    The first layer stays exact under the 2-bit split approximation; the
    classifier sees activations whose low bits decide the class.
    """
    cfg = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
    first = QuantLayer(
        spec=LayerSpec('dense', units=2, name='fc1'),
        weight_codes=np.array([[4, 0], [0, 3]]),
        weight_params=QuantParams(4, 1.0),
        mask=np.ones((2, 2), dtype=bool),
        bias=np.zeros(2, dtype=np.int64),
        out_params=QuantParams(4, 1.0),
        multiplier=cfg,
    )
    last = QuantLayer(
        spec=LayerSpec('dense', units=2, name='classifier'),
        weight_codes=np.array([[1, 0], [0, 1]]),
        weight_params=QuantParams(4, 1.0),
        mask=np.ones((2, 2), dtype=bool),
        bias=np.zeros(2, dtype=np.int64),
        multiplier=cfg,
    )
    return QuantModel('lsb', (2,), QuantParams(4, 1.0), [first, last], 4, 4)


class TestMacProfile:
    """Test cases for the cumulative MAC profile"""

    def test_cumulative_percent(self):
        profile = MacProfile.from_macs([100, 300, 600])
        assert profile.cumulative_percent == pytest.approx([10.0, 40.0, 100.0])
        assert profile.total == 1000
        assert profile.layer_count == 3

    def test_all_pruned(self):
        assert MacProfile.from_macs([0, 0]).cumulative_percent == [100.0, 100.0]

    def test_interpolation(self):
        profile = MacProfile.from_macs([100, 300, 600])
        assert profile.percent_at(0) == 0.0
        assert profile.percent_at(1.5) == pytest.approx(25.0)
        assert profile.percent_at(3) == 100.0

    def test_model_profile(self, mlp_model):
        model, _, _ = mlp_model
        profile = cumulative_mac_profile(model)
        assert profile.macs == layer_mac_counts(model)
        assert profile.cumulative_percent[-1] == 100.0


class TestChoosePolicy:
    """Test cases for the approx-first / exact-first decision"""

    def test_front_loaded(self):
        assert choose_policy(MacProfile.from_macs([80, 10, 5, 5])) == APPROX_FIRST

    def test_back_loaded(self):
        assert choose_policy(MacProfile.from_macs([5, 5, 50, 40])) == EXACT_FIRST

    def test_odd_layer_count(self):
        assert choose_policy(MacProfile.from_macs([100, 300, 600])) == EXACT_FIRST

    def test_exactly_half(self):
        assert choose_policy(MacProfile.from_macs([50, 50])) == APPROX_FIRST

    def test_no_layers(self):
        with pytest.raises(ConfigError):
            choose_policy(MacProfile.from_macs([]))


class TestMixedPlan:
    """Test cases for plan construction"""

    def test_approx_first(self):
        plan = MixedPlan(APPROX_FIRST, 1, 3)
        assert plan.schemes() == [Scheme.DNC_APPROX, Scheme.DNC_EXACT, Scheme.DNC_EXACT]

    def test_exact_first(self):
        plan = MixedPlan(EXACT_FIRST, 2, 3)
        assert plan.schemes() == [Scheme.DNC_EXACT, Scheme.DNC_EXACT, Scheme.DNC_APPROX]

    def test_configs(self):
        cfgs = MixedPlan(APPROX_FIRST, 1, 2, act_bits=4, weight_bits=4).configs()
        assert cfgs == [MultiplierConfig(Scheme.DNC_APPROX, 4, 4), MultiplierConfig(Scheme.DNC_EXACT, 4, 4)]

    def test_invalid(self):
        with pytest.raises(ConfigError):
            MixedPlan('random', 0, 3)
        with pytest.raises(ConfigError):
            MixedPlan(APPROX_FIRST, 4, 3)


class TestSelectPoint:
    """Test cases for budgeted selection"""

    def test_cheapest_feasible(self):
        points = [point(0, 0.90, 100.0), point(1, 0.895, 80.0), point(2, 0.85, 60.0)]
        assert select_point(points, 0.90, max_loss=0.01).n == 1

    def test_ties_break_on_area_then_n(self):
        points = [point(2, 0.9, 50.0, area=3.0), point(1, 0.9, 50.0, area=2.0), point(0, 0.9, 50.0, area=2.0)]
        assert select_point(points, 0.9).n == 0

    def test_budget_edge_is_inclusive(self):
        points = [point(0, 0.9, 100.0), point(3, 0.89, 10.0)]
        assert select_point(points, 0.9, max_loss=0.01).n == 3

    def test_infeasible(self):
        with pytest.raises(NoFeasiblePlanError, match='0.1000'):
            select_point([point(0, 0.8, 1.0)], 0.9, max_loss=0.01)

    def test_empty(self):
        with pytest.raises(ConfigError):
            select_point([], 0.9)

    def test_select_boundary_returns_plan(self):
        assert select_boundary([point(2, 0.9, 1.0)], 0.9) == MixedPlan(APPROX_FIRST, 2, 4)


class TestBoundarySweep:
    """Test cases for the sweep over boundary layers"""

    def test_sweep(self, mlp_model):
        model, x, y = mlp_model
        costs = load_unit_costs()
        seen = []
        points = boundary_sweep(model, x, y, APPROX_FIRST, costs, on_point=seen.append)
        assert [p.n for p in points] == [0, 1, 2, 3]
        assert seen == points
        assert points[0].accuracy == evaluate(model, x, y)
        energies = [p.energy for p in points]
        assert energies == sorted(energies, reverse=True)
        assert points[-1].energy < points[0].energy

    def test_workers_do_not_change_results(self, mlp_model):
        model, x, y = mlp_model
        costs = load_unit_costs()
        serial = boundary_sweep(model, x, y, EXACT_FIRST, costs)
        threaded = boundary_sweep(model, x, y, EXACT_FIRST, costs, workers=3)
        assert serial == threaded

    def test_selection_never_beats_all_exact_by_losing_budget(self, mlp_model):
        model, x, y = mlp_model
        points = boundary_sweep(model, x, y, APPROX_FIRST, load_unit_costs())
        baseline = points[0].accuracy
        chosen = select_point(points, baseline, max_loss=0.05)
        assert baseline - chosen.accuracy <= 0.05 + 1e-12
        assert chosen.energy <= points[0].energy

    def test_partial_plan_saves_energy_when_all_approx_fails(self):
        model = lsb_sensitive_model()
        # fc1 -> (4*x0, 3*x1); (1, 2) -> (4, 6) ties to class 0 once 6 is truncated to 4
        x = np.array([[1.0, 2.0], [1.0, 1.0], [0.0, 1.0], [3.0, 0.0], [0.0, 3.0],
                      [2.0, 1.0], [1.0, 3.0], [3.0, 3.0], [2.0, 0.0], [0.0, 2.0]])
        y = predict(model, x)
        costs = load_unit_costs()
        points = boundary_sweep(model, x, y, APPROX_FIRST, costs)
        baseline = points[0].accuracy
        assert baseline == 1.0
        assert baseline - points[-1].accuracy > 0.01

        chosen = select_point(points, baseline, max_loss=0.01)
        assert chosen.n == 1
        assert chosen.energy < points[0].energy
        assert baseline - chosen.accuracy <= 0.01

    @pytest.mark.parametrize('max_loss', [0.0, 0.01, 0.05, 0.2, 1.0])
    def test_selection_matches_brute_force(self, mlp_model, max_loss):
        model, x, y = mlp_model
        costs = load_unit_costs()
        points = boundary_sweep(model, x, y, APPROX_FIRST, costs) + boundary_sweep(model, x, y, EXACT_FIRST, costs)
        baseline = points[0].accuracy
        feasible = [p for p in points if baseline - p.accuracy <= max_loss + 1e-12]
        chosen = select_point(points, baseline, max_loss=max_loss)
        assert chosen.energy == min(p.energy for p in feasible)
        assert chosen in feasible

    def test_random_sweeps_match_brute_force(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            count = int(rng.integers(1, 6))
            points = [
                point(n, float(rng.choice([0.8, 0.85, 0.9, 0.95])), float(rng.integers(1, 5)), float(rng.integers(1, 3)))
                for n in range(count)
            ]
            baseline, max_loss = 0.95, float(rng.choice([0.0, 0.05, 0.1]))
            feasible = [p for p in points if baseline - p.accuracy <= max_loss + 1e-12]
            if not feasible:
                with pytest.raises(NoFeasiblePlanError):
                    select_point(points, baseline, max_loss)
                continue
            best = min(feasible, key=lambda p: (p.energy, p.area, p.n))
            assert select_point(points, baseline, max_loss) == best


if __name__ == "__main__":
    pytest.main([__file__])
