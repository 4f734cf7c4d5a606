"""
Parsing utilities for command-line spec strings.

This module parses multiplier config ids, dataset specs, bit ranges and split
points, and wraps each parser in a click parameter type so bad values become
usage errors.
"""

import re
from typing import Any, List, Optional

import click

from ..arith.lutcore import CHUNK_BITS, MultiplierConfig, Scheme
from ..modelio.datasets import DEFAULT_SYNTHETIC_SIZE, DEFAULT_VAL_FRACTION, DatasetSource

_CONFIG_PATTERN = re.compile(
    r'^(?P<scheme>tlut|dnc-exact|dnc-approx|wallace|array)'
    r'-(?P<data>\d+)(?:x(?P<weight>\d+))?'
    r'(?:-s(?P<split>\d+))?'
    r'(?P<raw>-raw)?$'
)


def parse_config_id(text: Optional[str]) -> MultiplierConfig:
    """
    Parse a multiplier config id.

    Supports various formats:
    - Square widths: "dnc-exact-8" -> 8b x 8b D&C exact
    - Mixed widths: "dnc-exact-8x4" -> 8b data x 4b weight
    - Approximate split: "dnc-approx-8-s2" -> split after the low 2 bits
    - Unoptimized storage: "dnc-exact-4-raw"

    Args:
        text: The config id to parse

    Returns:
        Parsed MultiplierConfig

    Raises:
        ValueError: If the id is empty, malformed or names an invalid config
    """
    if not text or not text.strip():
        raise ValueError("config id cannot be empty")
    match = _CONFIG_PATTERN.match(text.strip().lower())
    if not match:
        raise ValueError(
            f"invalid config id '{text}' (expected <scheme>-<bits>[x<weight bits>][-s<split>][-raw])"
        )
    scheme = Scheme(match.group('scheme'))
    data_bits = int(match.group('data'))
    weight_bits = int(match.group('weight') or data_bits)
    split = match.group('split')
    if match.group('raw') and not scheme.is_dnc:
        raise ValueError(f"'-raw' only applies to D&C schemes, not '{scheme.value}'")
    return MultiplierConfig(
        scheme=scheme,
        data_bits=data_bits,
        weight_bits=weight_bits,
        approx_split=None if split is None else int(split),
        storage_optimized=not match.group('raw'),
    )


def parse_config_list(text: str) -> List[MultiplierConfig]:
    """Comma-separated config ids, in the given order."""
    parts = [part for part in (text or '').split(',') if part.strip()]
    if not parts:
        raise ValueError("at least one config id is required")
    return [parse_config_id(part) for part in parts]


def parse_dataset_spec(text: Optional[str], default_seed: int = 0) -> DatasetSource:
    """
    Parse a dataset spec string.

    Supports various formats:
    - Synthetic: "synthetic:two_gaussians" with optional ":seed=<n>",
      ":size=<n>" and ":val=<fraction>" fields
    - CSV rows: "csv:data/train.csv"
    - IDX files: "idx:images.idx,labels.idx"

    Args:
        text: The dataset spec
        default_seed: Seed used when a synthetic spec names none

    Raises:
        ValueError: If the spec is empty or malformed
    """
    if not text or not text.strip():
        raise ValueError("dataset spec cannot be empty")
    kind, _, rest = text.strip().partition(':')
    if not rest:
        raise ValueError(f"invalid dataset spec '{text}' (expected <kind>:<details>)")
    if kind == 'csv':
        return DatasetSource(kind='csv', paths=(rest,))
    if kind == 'idx':
        paths = tuple(part for part in rest.split(',') if part)
        if len(paths) != 2:
            raise ValueError(f"idx spec needs '<images>,<labels>', got '{rest}'")
        return DatasetSource(kind='idx', paths=paths)
    if kind != 'synthetic':
        raise ValueError(f"unknown dataset kind '{kind}' (expected synthetic, csv or idx)")

    generator, *fields = rest.split(':')
    options = {'seed': str(default_seed), 'size': str(DEFAULT_SYNTHETIC_SIZE), 'val': str(DEFAULT_VAL_FRACTION)}
    for field in fields:
        key, sep, value = field.partition('=')
        if not sep or key not in options:
            raise ValueError(f"unknown synthetic option '{field}' (expected seed=, size= or val=)")
        options[key] = value
    try:
        seed, size, val = int(options['seed']), int(options['size']), float(options['val'])
    except ValueError:
        raise ValueError(f"invalid number in dataset spec '{text}'")
    return DatasetSource(kind='synthetic', generator=generator, seed=seed, size=size, val_fraction=val)


def parse_bit_range(text: Optional[str]) -> List[int]:
    """
    Parse a bit-width range: "2..8" (inclusive), "2,4,8" or "8".

    Raises:
        ValueError: If the range is malformed or a width is outside [1, 16]
    """
    if not text or not text.strip():
        raise ValueError("bit range cannot be empty")
    text = text.strip()
    try:
        if '..' in text:
            lo, hi = (int(part) for part in text.split('..', 1))
            if lo > hi:
                raise ValueError(f"empty bit range '{text}'")
            bits = list(range(lo, hi + 1))
        else:
            bits = [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        if 'empty bit range' in str(e):
            raise
        raise ValueError(f"invalid bit range '{text}' (expected a..b or a comma list)")
    for b in bits:
        if not 1 <= b <= 16:
            raise ValueError(f"bit width {b} outside [1, 16]")
    if len(set(bits)) != len(bits):
        raise ValueError(f"bit range '{text}' repeats a width")
    return bits


def parse_split_point(text: Any) -> int:
    """
    Parse an approximation split point: a positive, even bit count.

    Whether the split also fits inside the operand width is checked later,
    against the width in use.

    Raises:
        ValueError: If the value is not a positive even integer
    """
    try:
        split = int(str(text).strip())
    except ValueError:
        raise ValueError(f"invalid split point '{text}' (expected an even number of bits)")
    if split <= 0 or split % CHUNK_BITS:
        raise ValueError(f"split point must be a positive multiple of {CHUNK_BITS} bits, got {split}")
    return split


class ConfigListType(click.ParamType):
    """Comma-separated multiplier config ids."""

    name = 'configs'

    def convert(self, value: Any, param, ctx) -> List[MultiplierConfig]:
        if isinstance(value, list):
            return value
        try:
            return parse_config_list(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class DatasetSpecType(click.ParamType):
    """Dataset spec string; validated here, resolved against --seed later."""

    name = 'dataset'

    def convert(self, value: Any, param, ctx) -> str:
        try:
            parse_dataset_spec(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)
        return value


class BitRangeType(click.ParamType):
    """Bit-width range ``a..b`` or comma list."""

    name = 'bits'

    def convert(self, value: Any, param, ctx) -> List[int]:
        if isinstance(value, list):
            return value
        try:
            return parse_bit_range(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class SplitPointType(click.ParamType):
    """Approximation split point in bits."""

    name = 'split'

    def convert(self, value: Any, param, ctx) -> int:
        if isinstance(value, int):
            value = str(value)
        try:
            return parse_split_point(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


CONFIG_LIST = ConfigListType()
DATASET_SPEC = DatasetSpecType()
BIT_RANGE = BitRangeType()
SPLIT_POINT = SplitPointType()
