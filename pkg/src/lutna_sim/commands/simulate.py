"""
Simulate command for accuracy and energy of a model under each multiplier
scheme.
"""

from pathlib import Path
from typing import List, Optional

import click

from ..arith.lutcore import MultiplierConfig
from ..hwcost.report import energy_per_inference, plan_area
from ..netsim import evaluate, layer_mac_counts, model_for_config, to_float_network
from ..utils import CONFIG_LIST, write_csv
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
    workers_option,
)

DEFAULT_SCHEMES = 'dnc-exact-8,tlut-8,dnc-approx-8,dnc-exact-4,wallace-8'
SIMULATE_COLUMNS = [
    'config', 'accuracy', 'float_accuracy', 'accuracy_loss', 'sparsity',
    'surviving_macs', 'energy_per_inference', 'area',
]


@click.command()
@model_option
@dataset_option
@click.option('--schemes', '-s', type=CONFIG_LIST, default=DEFAULT_SCHEMES, show_default=True,
              help='Comma-separated config ids to run the whole model on')
@unit_costs_option
@workers_option
@seed_option
@out_dir_option
def simulate(model_path: Path, dataset: str, schemes: List[MultiplierConfig], unit_costs: Optional[Path],
             workers: int, seed: int, out_dir: Path):
    """Accuracy, loss vs real arithmetic, MACs and energy per inference.

    Each config runs on every compute layer; configs with other widths than
    the model re-quantize it first. Writes simulate.csv.
    """
    echo_config(command='simulate', model=model_path, dataset=dataset,
                schemes=','.join(cfg.config_id for cfg in schemes), unit_costs=unit_costs or 'bundled',
                workers=workers, seed=seed, out_dir=out_dir)
    rows = []
    with domain_errors():
        costs = resolve_costs(unit_costs)
        model = resolve_model(model_path)
        train_set, val_set = resolve_dataset(dataset, seed)
        float_accuracy = to_float_network(model).accuracy(val_set.x, val_set.y)
        for cfg in schemes:
            planned = model_for_config(model, train_set.x, cfg)
            accuracy = evaluate(planned, val_set.x, val_set.y, workers=workers)
            rows.append({
                'config': cfg.config_id,
                'accuracy': accuracy,
                'float_accuracy': float_accuracy,
                'accuracy_loss': float_accuracy - accuracy,
                'sparsity': planned.sparsity(),
                'surviving_macs': int(sum(layer_mac_counts(planned))),
                'energy_per_inference': energy_per_inference(planned, costs),
                'area': plan_area(planned.plan(), costs),
            })
        output = write_csv(prepare_out_dir(out_dir) / 'simulate.csv', SIMULATE_COLUMNS, rows)

    for row in rows:
        click.echo(f"{row['config']:<20} accuracy={row['accuracy']:.4f} loss={row['accuracy_loss']:+.4f} "
                   f"energy/inference={row['energy_per_inference']:.1f}")
    click.echo(f"✓ Wrote {output}")
