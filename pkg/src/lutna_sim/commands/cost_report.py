"""
Cost-report command for comparing multiplier hardware costs.
"""

from pathlib import Path
from typing import List, Optional

import click

from ..arith.lutcore import MultiplierConfig
from ..hwcost.references import REFERENCE_NOTE
from ..hwcost.report import COMPARE_COLUMNS, compare_report
from ..utils import CONFIG_LIST, write_csv
from .base import domain_errors, echo_config, out_dir_option, prepare_out_dir, resolve_costs, seed_option, unit_costs_option

DEFAULT_SCHEMES = 'tlut-8,dnc-exact-8,dnc-approx-8,wallace-8,array-8'


@click.command()
@click.option('--schemes', '-s', type=CONFIG_LIST, default=DEFAULT_SCHEMES, show_default=True,
              help='Comma-separated config ids, e.g. dnc-exact-4,dnc-approx-4,dnc-exact-4-raw')
@click.option('--baseline', '-b', default=None,
              help='Config id the ratios are taken against (default: first config)')
@unit_costs_option
@seed_option
@out_dir_option
def cost_report(schemes: List[MultiplierConfig], baseline: Optional[str], unit_costs: Optional[Path],
                seed: int, out_dir: Path):
    """Component counts, area and energy per MAC for multiplier configs.

    Ratios are row / baseline. Published headline ratios are attached as
    reference columns where one exists for the pair.
    """
    echo_config(command='cost-report', schemes=','.join(cfg.config_id for cfg in schemes),
                baseline=baseline, unit_costs=unit_costs or 'bundled', seed=seed, out_dir=out_dir)
    with domain_errors():
        costs = resolve_costs(unit_costs)
        rows = compare_report(schemes, costs, baseline)
        output = write_csv(prepare_out_dir(out_dir) / 'cost_report.csv', COMPARE_COLUMNS, rows)

    for row in rows:
        click.echo(
            f"{row['config']:<20} sram={row['sram']:<6} mux={row['mux']:<6} ha={row['ha']:<4} "
            f"fa={row['fa']:<4} area={row['area']:.2f} energy/mac={row['energy_per_mac']:.2f} "
            f"x{row['ratio_to_baseline']:.3f}"
        )
    if any(row['reference_note'] for row in rows):
        click.echo(f"published_* columns: {REFERENCE_NOTE}")
    click.echo(f"✓ Wrote {output}")
