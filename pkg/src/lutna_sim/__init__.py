"""
LUT-NA Sim - Bit-accurate simulator for look-up-table neural accelerators

A Python CLI tool that models exact and approximate divide-and-conquer LUT
multipliers, their hardware cost, and their effect on quantized, pruned
networks.
"""

import sys

import click

from .commands import (
    act_stats,
    bit_sweep,
    cost_report,
    ltp,
    mixed_search,
    mul_verify,
    simulate,
)

__all__ = [
    "cli",
    "main",
]


@click.group()
def cli():
    """LUT-NA Sim - Bit-accurate LUT multiplier and accelerator simulator"""


# Add all commands to the CLI group
cli.add_command(mul_verify)
cli.add_command(cost_report)
cli.add_command(ltp)
cli.add_command(bit_sweep)
cli.add_command(act_stats)
cli.add_command(simulate)
cli.add_command(mixed_search)


def main() -> None:
    """Main entry point for the CLI"""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\nOperation cancelled by user", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
