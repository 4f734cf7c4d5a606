"""
LTP command for training and iteratively pruning a desk-scale network.
"""

from dataclasses import asdict
from pathlib import Path

import click

from ..ltp import LtpConfig, RoundRecord, ltp_run
from ..ltp.pruning import PRUNE_MODES, REWIND_MODES
from ..modelio import save_model
from ..netsim import ARCHITECTURE_REGISTRY
from ..utils import write_csv
from .base import (
    dataset_option,
    domain_errors,
    echo_config,
    out_dir_option,
    prepare_out_dir,
    resolve_dataset,
    seed_option,
    verbose_option,
)

ROUND_COLUMNS = ['round', 'sparsity', 'train_acc', 'val_acc']


@click.command()
@click.option('--arch', '-a', type=click.Choice(ARCHITECTURE_REGISTRY.get_cli_choices()), default='mlp',
              show_default=True, help='Network architecture')
@dataset_option
@click.option('--prune-percent', '-p', type=float, default=0.2, show_default=True,
              help='Fraction of surviving weights pruned per round')
@click.option('--rounds', '-n', type=click.IntRange(min=0), default=10, show_default=True,
              help='Maximum number of pruning rounds')
@click.option('--epochs', '-e', type=click.IntRange(min=1), default=20, show_default=True,
              help='Training epochs per round')
@click.option('--drop-limit', type=float, default=0.01, show_default=True,
              help='Stop once validation accuracy drops this much below the unpruned baseline')
@click.option('--mode', type=click.Choice(PRUNE_MODES), default='global', show_default=True,
              help='Rank weights across all layers or within each layer')
@click.option('--rewind', type=click.Choice(REWIND_MODES), default='original', show_default=True,
              help='Rewind survivors to their original init or to a fresh random init')
@click.option('--act-bits', type=click.IntRange(1, 16), default=8, show_default=True,
              help='Activation width of the saved model')
@click.option('--weight-bits', type=click.IntRange(1, 16), default=8, show_default=True,
              help='Weight width of the saved model')
@seed_option
@out_dir_option
@verbose_option
def ltp(arch: str, dataset: str, prune_percent: float, rounds: int, epochs: int, drop_limit: float,
        mode: str, rewind: str, act_bits: int, weight_bits: int, seed: int, out_dir: Path, verbose: bool):
    """Train, prune and rewind a network, then save it quantized.

    Writes ltp_rounds.csv and model.json / model.bin to the output directory.
    """
    echo_config(command='ltp', arch=arch, dataset=dataset, prune_percent=prune_percent, rounds=rounds,
                epochs=epochs, drop_limit=drop_limit, mode=mode, rewind=rewind, act_bits=act_bits,
                weight_bits=weight_bits, seed=seed, out_dir=out_dir)
    click.echo(f"architecture: {arch} ({ARCHITECTURE_REGISTRY.get_architecture_description(arch)})")

    def report(entry: RoundRecord) -> None:
        if verbose:
            click.echo(f"round {entry.round}: sparsity={entry.sparsity:.4f} "
                       f"train_acc={entry.train_acc:.4f} val_acc={entry.val_acc:.4f}")

    with domain_errors():
        cfg = LtpConfig(
            prune_percent=prune_percent,
            max_rounds=rounds,
            epochs_per_round=epochs,
            accuracy_drop_limit=drop_limit,
            seed=seed,
            mode=mode,
            rewind=rewind,
            act_bits=act_bits,
            weight_bits=weight_bits,
        )
        train_set, val_set = resolve_dataset(dataset, seed)
        result = ltp_run(arch, train_set, val_set, cfg, on_round=report)
        out = prepare_out_dir(out_dir)
        log_path = write_csv(out / 'ltp_rounds.csv', ROUND_COLUMNS, [asdict(entry) for entry in result.log])
        model_path = save_model(result.model, out / 'model.json')

    click.echo(f"baseline val_acc={result.baseline_accuracy:.4f} final val_acc={result.final_accuracy:.4f} "
               f"sparsity={result.sparsity:.4f} rounds={result.rounds}")
    click.echo(f"✓ Wrote {log_path} and {model_path}")
