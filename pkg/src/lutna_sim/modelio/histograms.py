"""
Histogram persistence as ``code,count`` CSV files.
"""

from pathlib import Path
from typing import Union

import numpy as np

from ..errors import DatasetFormatError
from ..netsim.stats import ActivationHistogram
from ..utils.file_operations import read_csv, write_csv

HISTOGRAM_COLUMNS = ['code', 'count']


def save_histogram(hist: ActivationHistogram, path: Union[str, Path]) -> Path:
    rows = [{'code': code, 'count': int(count)} for code, count in enumerate(hist.counts)]
    return write_csv(path, HISTOGRAM_COLUMNS, rows)


def load_histogram(path: Union[str, Path]) -> ActivationHistogram:
    """
    Read a histogram written by :func:`save_histogram`.

    The bit width follows from the row count, which must be a power of two
    with codes listed in order.

    Raises:
        DatasetFormatError: If the file is not a valid histogram
    """
    try:
        rows = read_csv(path)
    except OSError as e:
        raise DatasetFormatError(f"{path}: {e}")
    size = len(rows)
    if size < 2 or size & (size - 1):
        raise DatasetFormatError(f"{path}: {size} bins is not a power of two")
    counts = np.zeros(size, dtype=np.int64)
    for index, row in enumerate(rows):
        try:
            code, count = int(row['code']), int(row['count'])
        except (KeyError, TypeError, ValueError):
            raise DatasetFormatError(f"{path}: row {index + 1} is not a code,count pair")
        if code != index:
            raise DatasetFormatError(f"{path}: row {index + 1} has code {code}, expected {index}")
        if count < 0:
            raise DatasetFormatError(f"{path}: row {index + 1} has a negative count")
        counts[index] = count
    return ActivationHistogram(size.bit_length() - 1, counts)
