"""
Act-stats command for activation histograms and the LSB-side product
distribution.
"""

from pathlib import Path

import click

from ..modelio import save_histogram
from ..netsim import activation_histogram, lsb_product_distribution, weight_histogram
from ..utils import write_csv
from .base import (
    dataset_option,
    domain_errors,
    echo_config,
    model_option,
    out_dir_option,
    prepare_out_dir,
    resolve_dataset,
    resolve_model,
    seed_option,
)

PRODUCT_COLUMNS = ['product', 'probability']


@click.command()
@model_option
@dataset_option
@click.option('--n-bits', type=click.IntRange(1, 16), default=4, show_default=True,
              help='Resolution the activation histogram is reported at')
@click.option('--weight-bits', type=click.IntRange(1, 16), default=4, show_default=True,
              help='Resolution of the weight magnitudes in the product distribution')
@seed_option
@out_dir_option
def act_stats(model_path: Path, dataset: str, n_bits: int, weight_bits: int, seed: int, out_dir: Path):
    """Activation value counts and the (weight x 2b) LSB product distribution.

    Writes act_hist.csv, weight_hist.csv and lsb_products.csv.
    """
    echo_config(command='act-stats', model=model_path, dataset=dataset, n_bits=n_bits,
                weight_bits=weight_bits, seed=seed, out_dir=out_dir)
    with domain_errors():
        model = resolve_model(model_path)
        _, val_set = resolve_dataset(dataset, seed)
        hist = activation_histogram(model, val_set.x, n_bits)
        weights = weight_histogram(model, weight_bits)
        products = lsb_product_distribution(hist, weights)
        out = prepare_out_dir(out_dir)
        save_histogram(hist, out / 'act_hist.csv')
        save_histogram(weights, out / 'weight_hist.csv')
        write_csv(out / 'lsb_products.csv', PRODUCT_COLUMNS,
                  [{'product': value, 'probability': float(p)} for value, p in enumerate(products)])

    zero_share = hist.counts[0] / hist.total
    click.echo(f"{hist.total} activations; mode code {hist.mode} ({zero_share:.2%} at 0)")
    click.echo(f"LSB product distribution: argmax {int(products.argmax())}, P(0)={products[0]:.4f}")
    click.echo(f"✓ Wrote act_hist.csv, weight_hist.csv and lsb_products.csv to {out}")
