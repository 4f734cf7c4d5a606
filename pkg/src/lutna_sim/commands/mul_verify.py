"""
Mul-verify command for exhaustive multiplier correctness checks.
"""

import sys
from pathlib import Path
from typing import Optional

import click

from ..arith import SCHEME_REGISTRY, Scheme
from ..arith.fixedpoint import max_code
from ..arith.verify import verify_approx_bounds, verify_chunk_basis, verify_exact
from ..utils import SPLIT_POINT, write_csv
from .base import domain_errors, echo_config, out_dir_option, prepare_out_dir, seed_option

VERIFY_COLUMNS = ['check', 'config', 'cases', 'failures']


@click.command()
@click.option('--bits', type=click.Choice(['2', '4', '8', '16']), default='8', show_default=True,
              help='Operand magnitude width')
@click.option('--scheme', '-s', type=click.Choice(SCHEME_REGISTRY.get_cli_choices()),
              default='all', show_default=True,
              help='Scheme to check (exact schemes against the integer product, '
                   'dnc-approx against its error envelope)')
@click.option('--weight-stride', type=click.IntRange(min=1), default=None,
              help='Step over weight magnitudes (default: 1, or 0x1111 at 16b)')
@click.option('--approx/--no-approx', default=True, show_default=True,
              help='Also check the approximate multiplier error envelope')
@click.option('--split', type=SPLIT_POINT, default=None,
              help='Approximation split point in bits (default: half the width)')
@seed_option
@out_dir_option
def mul_verify(bits: str, scheme: str, weight_stride: Optional[int], approx: bool,
               split: Optional[int], seed: int, out_dir: Path):
    """Check every multiplier scheme against integer multiplication.

    Exact schemes must match the product on all magnitude pairs and sign
    combinations; the approximate scheme must stay inside its error envelope.
    """
    width = int(bits)
    echo_config(command='mul-verify', bits=width, scheme=scheme, weight_stride=weight_stride,
                approx=approx, split=split, seed=seed, out_dir=out_dir)

    selected = SCHEME_REGISTRY.resolve_schemes(scheme)
    for entry in selected:
        click.echo(f"  {entry.value}: {SCHEME_REGISTRY.get_scheme_description(entry.value)}")
    exact_schemes = [entry for entry in selected if SCHEME_REGISTRY.is_exact(entry)]

    failures = 0
    rows = []
    with domain_errors():
        if exact_schemes:
            exact = verify_exact(width, weight_stride, exact_schemes)
            click.echo(f"{exact['cases']} cases, {exact['mismatches']} mismatches")
            for config_id, entry in exact['per_scheme'].items():
                rows.append({'check': 'exact', 'config': config_id,
                             'cases': entry['cases'], 'failures': entry['mismatches']})
            failures += exact['mismatches']

            if exact['weight_stride'] > 1:
                swept = len(range(0, max_code(width) + 1, exact['weight_stride']))
                click.echo(f"strided: weight stride {exact['weight_stride']} covers {swept} of "
                           f"{max_code(width) + 1} weight magnitudes")
                basis = verify_chunk_basis(width, exact_schemes)
                click.echo(f"chunk basis: {basis['cases']} cases, {basis['mismatches']} mismatches "
                           f"(every weight, single-chunk data)")
                for config_id, entry in basis['per_scheme'].items():
                    rows.append({'check': 'exact-chunk-basis', 'config': config_id,
                                 'cases': entry['cases'], 'failures': entry['mismatches']})
                failures += basis['mismatches']

        if approx and Scheme.DNC_APPROX in selected and width >= 4:
            bounds = verify_approx_bounds(width, split, weight_stride)
            stride_note = f", weight stride {bounds['weight_stride']}" if bounds['weight_stride'] > 1 else ""
            click.echo(
                f"approx split={bounds['split']}: {bounds['pairs']} pairs, {bounds['violations']} violations, "
                f"max relative error {bounds['max_relative_error']:.6f} (bound {bounds['relative_error_bound']:.6f})"
                f"{stride_note}"
            )
            rows.append({'check': 'approx-bounds', 'config': f"dnc-approx-{width}-s{bounds['split']}",
                         'cases': bounds['pairs'], 'failures': bounds['violations']})
            failures += bounds['violations']
        elif approx and Scheme.DNC_APPROX in selected:
            click.echo("approx check skipped: needs at least 4 bits")

        if not rows and not (approx and Scheme.DNC_APPROX in selected):
            click.echo("nothing to check: the approximate scheme needs --approx")

        output = write_csv(prepare_out_dir(out_dir) / 'mul_verify.csv', VERIFY_COLUMNS, rows)

    if failures:
        click.echo(f"✗ {failures} failures (details in {output})", err=True)
        sys.exit(1)
    click.echo(f"✓ All checks passed ({output})")
