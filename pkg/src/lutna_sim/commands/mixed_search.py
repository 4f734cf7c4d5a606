"""
Mixed-search command for the exact/approximate boundary-layer search.
"""

from pathlib import Path
from typing import Optional

import click

from ..arith.lutcore import MultiplierConfig, Scheme
from ..mixedprec import POLICIES, SweepPoint, boundary_sweep, choose_policy, cumulative_mac_profile, select_point
from ..netsim import assign_scheme, evaluate, to_float_network
from ..utils import SPLIT_POINT, write_csv
from .base import (
    dataset_option,
    domain_errors,
    echo_config,
    model_option,
    out_dir_option,
    prepare_out_dir,
    resolve_costs,
    resolve_dataset,
    resolve_model,
    seed_option,
    unit_costs_option,
    verbose_option,
    workers_option,
)

SWEEP_COLUMNS = ['policy', 'n', 'accuracy', 'energy_units', 'area_units']
PROFILE_COLUMNS = ['layer', 'name', 'macs', 'cumulative_percent']


@click.command()
@model_option
@dataset_option
@click.option('--policy', type=click.Choice(list(POLICIES) + ['auto']), default='auto', show_default=True,
              help='Which scheme runs on the first n layers (auto: decided from the MAC profile)')
@click.option('--max-loss', type=float, default=0.01, show_default=True,
              help='Accuracy loss budget relative to the baseline')
@click.option('--baseline', type=click.Choice(['quantized', 'float']), default='quantized', show_default=True,
              help='Accuracy reference: all-exact quantized model or real arithmetic')
@click.option('--split', type=SPLIT_POINT, default=None,
              help='Approximation split point in bits (default: half the width)')
@unit_costs_option
@workers_option
@seed_option
@out_dir_option
@verbose_option
def mixed_search(model_path: Path, dataset: str, policy: str, max_loss: float, baseline: str,
                 split: Optional[int], unit_costs: Optional[Path], workers: int, seed: int,
                 out_dir: Path, verbose: bool):
    """Find the cheapest exact/approximate boundary within the loss budget.

    Writes mac_profile.csv and mixed_sweep.csv.
    """
    echo_config(command='mixed-search', model=model_path, dataset=dataset, policy=policy, max_loss=max_loss,
                baseline=baseline, split=split, unit_costs=unit_costs or 'bundled', workers=workers,
                seed=seed, out_dir=out_dir)

    def report(point: SweepPoint) -> None:
        if verbose:
            click.echo(f"n={point.n}: accuracy={point.accuracy:.4f} energy={point.energy:.1f}")

    with domain_errors():
        costs = resolve_costs(unit_costs)
        model = resolve_model(model_path)
        _, val_set = resolve_dataset(dataset, seed)
        profile = cumulative_mac_profile(model)
        chosen = choose_policy(profile) if policy == 'auto' else policy
        if baseline == 'float':
            reference = to_float_network(model).accuracy(val_set.x, val_set.y)
        else:
            exact = MultiplierConfig.for_bits(Scheme.DNC_EXACT, model.act_bits, model.weight_bits)
            reference = evaluate(assign_scheme(model, exact), val_set.x, val_set.y, workers=workers)
        points = boundary_sweep(model, val_set.x, val_set.y, chosen, costs,
                                approx_split=split, workers=workers, on_point=report)

        out = prepare_out_dir(out_dir)
        names = [model.layers[i].name for i in model.compute_indices]
        write_csv(out / 'mac_profile.csv', PROFILE_COLUMNS, [
            {'layer': i + 1, 'name': name, 'macs': macs, 'cumulative_percent': pct}
            for i, (name, macs, pct) in enumerate(zip(names, profile.macs, profile.cumulative_percent))
        ])
        write_csv(out / 'mixed_sweep.csv', SWEEP_COLUMNS, [
            {'policy': p.plan.policy, 'n': p.n, 'accuracy': p.accuracy,
             'energy_units': p.energy, 'area_units': p.area}
            for p in points
        ])
        best = select_point(points, reference, max_loss)

    costliest = max(p.energy for p in points)
    share = best.energy / costliest if costliest else 1.0
    click.echo(f"policy {chosen}; baseline accuracy {reference:.4f}")
    click.echo(f"selected n={best.n}: accuracy={best.accuracy:.4f} energy={best.energy:.1f} "
               f"({share:.2%} of the costliest plan)")
    click.echo(f"✓ Wrote mac_profile.csv and mixed_sweep.csv to {out}")
