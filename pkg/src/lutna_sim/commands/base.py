"""
Base functionality for CLI commands.

This module provides common options, error reporting and loaders used by
multiple commands.
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional, Tuple

import click

from ..errors import LutnaError
from ..hwcost.unit_costs import UnitCosts, load_unit_costs
from ..modelio.datasets import GENERATOR_REGISTRY, Dataset, load_dataset
from ..modelio.model_store import load_model
from ..netsim.model import QuantModel
from ..utils import DATASET_SPEC, ensure_out_dir, parse_dataset_spec

DEFAULT_DATASET = 'synthetic:two_gaussians'


def seed_option(func):
    return click.option('--seed', type=int, default=0, show_default=True,
                        help='Seed for every random choice of the run')(func)


def out_dir_option(func):
    return click.option('--out-dir', '-o', type=click.Path(file_okay=False, path_type=Path),
                        default=Path('out'), show_default=True,
                        help='Directory all output files are written to')(func)


def unit_costs_option(func):
    return click.option('--unit-costs', type=click.Path(exists=True, dir_okay=False, path_type=Path),
                        default=None,
                        help='INI file with [area] and [energy] unit costs (default: bundled)')(func)


def model_option(func):
    return click.option('--model', '-m', 'model_path', required=True,
                        type=click.Path(exists=True, dir_okay=False, path_type=Path),
                        help='Model manifest written by the ltp command')(func)


def dataset_option(func):
    return click.option('--dataset', '-d', type=DATASET_SPEC, default=DEFAULT_DATASET, show_default=True,
                        help='synthetic:<generator>[:seed=n][:size=n][:val=f], csv:<path> or idx:<images>,<labels>')(func)


def workers_option(func):
    return click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True,
                        help='Concurrent evaluations')(func)


def verbose_option(func):
    return click.option('--verbose', '-v', is_flag=True,
                        help='Show progress for every round or sweep point')(func)


def echo_config(**items: Any) -> None:
    """
    Print the resolved configuration of a run as one line.

    Args:
        **items: Settings in display order; None values are shown as '-'
    """
    parts = [f"{key}={'-' if value is None else value}" for key, value in items.items()]
    click.echo("config: " + " ".join(parts))


def fail(kind: str, message: str) -> None:
    """
    Report a runtime failure as a single machine-parsable line and exit 1.

    Raises:
        SystemExit: Always
    """
    click.echo(f"error: {kind}: {message}", err=True)
    sys.exit(1)


@contextmanager
def domain_errors() -> Iterator[None]:
    """Turn simulator and file errors inside the block into ``fail`` calls."""
    try:
        yield
    except LutnaError as e:
        fail(e.kind, str(e))
    except OSError as e:
        fail('io', str(e))


def resolve_costs(path: Optional[Path]) -> UnitCosts:
    return load_unit_costs(path)


def resolve_dataset(spec: str, seed: int) -> Tuple[Dataset, Dataset]:
    """
    Load a dataset spec and split it into (train, validation).

    A synthetic spec without its own seed uses ``seed``.
    """
    source = parse_dataset_spec(spec, default_seed=seed)
    dataset = load_dataset(source)
    if source.kind == 'synthetic':
        click.echo(f"dataset: {source.generator} ({GENERATOR_REGISTRY.get_generator_description(source.generator)}), "
                   f"{len(dataset)} samples")
    else:
        click.echo(f"dataset: {source.spec}, {len(dataset)} samples")
    return dataset.split(source.val_fraction)


def resolve_model(path: Path) -> QuantModel:
    return load_model(path)


def prepare_out_dir(out_dir: Path) -> Path:
    return ensure_out_dir(out_dir)
