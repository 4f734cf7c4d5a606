"""
File system utilities for the LUT-NA simulator CLI.

This module provides output-directory handling and deterministic CSV writing.
"""

import csv
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union


def ensure_out_dir(directory: Union[str, Path]) -> Path:
    """
    Create the output directory if needed.

    Args:
        directory: Directory all artifacts of a run are written to

    Returns:
        The directory as a Path
    """
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def format_cell(value: Any) -> str:
    """
    Render one CSV cell.

    Floats use a fixed six-decimal format so repeated runs produce identical
    bytes; booleans are written as 0/1; None becomes an empty cell.
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(path: Union[str, Path], columns: Sequence[str], rows: Sequence[Dict[str, Any]]) -> Path:
    """
    Write rows as a CSV file with a header line.

    Args:
        path: Output file
        columns: Column names, in output order
        rows: One dictionary per row keyed by column name

    Returns:
        Path of the written file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])
    return path


def read_csv(path: Union[str, Path]) -> List[Dict[str, str]]:
    """Read a CSV file with a header line into row dictionaries."""
    with open(path, newline='') as handle:
        return list(csv.DictReader(handle))
