"""
Utility modules for the LUT-NA simulator CLI.

This module provides common utilities used throughout the application.
"""

from .file_operations import ensure_out_dir, format_cell, read_csv, write_csv
from .spec_parsing import (
    BIT_RANGE,
    CONFIG_LIST,
    DATASET_SPEC,
    SPLIT_POINT,
    parse_bit_range,
    parse_config_id,
    parse_config_list,
    parse_dataset_spec,
    parse_split_point,
)

__all__ = [
    'ensure_out_dir',
    'format_cell',
    'read_csv',
    'write_csv',
    'BIT_RANGE',
    'CONFIG_LIST',
    'DATASET_SPEC',
    'SPLIT_POINT',
    'parse_bit_range',
    'parse_config_id',
    'parse_config_list',
    'parse_dataset_spec',
    'parse_split_point',
]
