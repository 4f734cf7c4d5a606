"""
Labeled datasets: synthetic generators, CSV rows and IDX image files.

Every loader returns samples in a deterministic order; synthetic generators
are reproducible from their seed.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..errors import ConfigError, DatasetFormatError, EmptyDatasetError

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801

DEFAULT_SYNTHETIC_SIZE = 400
DEFAULT_VAL_FRACTION = 0.25


@dataclass
class Dataset:
    """Samples ``x`` (batch first) with integer labels ``y`` in ``[0, n_classes)``."""

    x: np.ndarray
    y: np.ndarray
    n_classes: int
    name: str = ''

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.int64)
        if len(self.x) != len(self.y):
            raise DatasetFormatError(f"{len(self.x)} samples but {len(self.y)} labels")
        bad = np.flatnonzero((self.y < 0) | (self.y >= self.n_classes))
        if bad.size:
            raise DatasetFormatError(
                f"label {int(self.y[bad[0]])} at row {int(bad[0])} is outside [0, {self.n_classes})"
            )

    def __len__(self) -> int:
        return len(self.y)

    @property
    def input_shape(self) -> Tuple[int, ...]:
        return tuple(self.x.shape[1:])

    def subset(self, start: int, stop: int) -> "Dataset":
        return Dataset(self.x[start:stop], self.y[start:stop], self.n_classes, self.name)

    def split(self, val_fraction: float = DEFAULT_VAL_FRACTION) -> Tuple["Dataset", "Dataset"]:
        """
        Split into (train, validation); the validation part is the tail.

        Raises:
            EmptyDatasetError: If either part would be empty
        """
        n_val = int(round(len(self) * val_fraction))
        n_train = len(self) - n_val
        if n_val < 1 or n_train < 1:
            raise EmptyDatasetError(
                f"cannot split {len(self)} samples with validation fraction {val_fraction}"
            )
        return self.subset(0, n_train), self.subset(n_train, len(self))


@dataclass(frozen=True)
class DatasetSource:
    """
    Where a dataset comes from.

    ``kind`` is ``synthetic``, ``csv`` or ``idx``. Synthetic sources name a
    generator, seed and size; file sources carry their paths.
    """

    kind: str
    generator: str = ''
    seed: int = 0
    size: int = DEFAULT_SYNTHETIC_SIZE
    paths: Tuple[str, ...] = ()
    val_fraction: float = DEFAULT_VAL_FRACTION

    def __post_init__(self):
        if self.kind not in ('synthetic', 'csv', 'idx'):
            raise ConfigError(f"unknown dataset kind '{self.kind}'")
        if not 0.0 < self.val_fraction < 1.0:
            raise ConfigError(f"validation fraction must be in (0, 1), got {self.val_fraction}")

    @property
    def spec(self) -> str:
        if self.kind == 'synthetic':
            return f"synthetic:{self.generator}:seed={self.seed}:size={self.size}"
        return f"{self.kind}:{','.join(self.paths)}"


def _shuffle(x: np.ndarray, y: np.ndarray, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    order = rng.permutation(len(y))
    return x[order], y[order]


def two_gaussians(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Two unit-variance 2-D clusters centred at (-2, -2) and (2, 2)."""
    y = np.arange(size) % 2
    centres = np.array([[-2.0, -2.0], [2.0, 2.0]])
    x = centres[y] + rng.standard_normal((size, 2))
    x, y = _shuffle(x, y, rng)
    return x, y, 2


def blobs(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Four 4-D clusters on the corners of a square."""
    y = np.arange(size) % 4
    centres = np.array([
        [3.0, 3.0, 0.0, 0.0],
        [-3.0, 3.0, 0.0, 0.0],
        [-3.0, -3.0, 0.0, 0.0],
        [3.0, -3.0, 0.0, 0.0],
    ])
    x = centres[y] + rng.standard_normal((size, 4))
    x, y = _shuffle(x, y, rng)
    return x, y, 4


def bars(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    1x8x8 images of a horizontal bar, a vertical bar or a diagonal, at a
    random position, with additive noise.
    """
    side = 8
    y = np.arange(size) % 3
    x = np.zeros((size, 1, side, side))
    positions = rng.integers(0, side, size=size)
    for i, (label, pos) in enumerate(zip(y, positions)):
        if label == 0:
            x[i, 0, pos, :] = 1.0
        elif label == 1:
            x[i, 0, :, pos] = 1.0
        else:
            x[i, 0] = np.roll(np.eye(side), pos, axis=1)
    x += 0.1 * rng.standard_normal(x.shape)
    x, y = _shuffle(x, y, rng)
    return x, y, 3


class GeneratorRegistry:
    """Registry for all synthetic dataset generators."""

    def __init__(self):
        self._generators: Dict[str, Dict[str, Any]] = {
            'two_gaussians': {
                'function': two_gaussians,
                'description': 'Two separable 2-D Gaussian clusters',
            },
            'blobs': {
                'function': blobs,
                'description': 'Four Gaussian clusters in 4-D',
            },
            'bars': {
                'function': bars,
                'description': '1x8x8 images of horizontal, vertical and diagonal bars',
            },
        }

    def get_all_generator_names(self) -> List[str]:
        return list(self._generators.keys())

    def get_generator_description(self, name: str) -> str:
        return self._generators.get(name, {}).get('description', 'Unknown generator')

    def get_generator(self, name: str) -> Callable:
        if name not in self._generators:
            raise ConfigError(
                f"unknown generator '{name}' (choose from {', '.join(self.get_all_generator_names())})"
            )
        return self._generators[name]['function']


# Global registry instance
GENERATOR_REGISTRY = GeneratorRegistry()


def load_csv(path: Path, n_classes: Optional[int] = None) -> Dataset:
    """
    Rows of numeric features with the integer label in the last column.

    The first row is a header. Errors name the 1-based data row.
    """
    rows: List[List[float]] = []
    labels: List[int] = []
    try:
        with open(path, newline='') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None:
                raise DatasetFormatError(f"{path}: empty CSV file")
            for row_index, row in enumerate(reader, start=1):
                if not row:
                    continue
                if len(row) != len(header):
                    raise DatasetFormatError(
                        f"{path}: row {row_index} has {len(row)} cells, header has {len(header)}"
                    )
                try:
                    features = [float(cell) for cell in row[:-1]]
                    label = float(row[-1])
                except ValueError:
                    raise DatasetFormatError(f"{path}: row {row_index} has a non-numeric cell")
                if label != int(label):
                    raise DatasetFormatError(f"{path}: row {row_index} has non-integer label {row[-1]}")
                rows.append(features)
                labels.append(int(label))
    except OSError as e:
        raise DatasetFormatError(f"{path}: {e}")
    if not labels:
        raise EmptyDatasetError(f"{path}: no data rows")
    if n_classes is None:
        n_classes = max(max(labels) + 1, 2)
    return Dataset(np.array(rows), np.array(labels), n_classes, name=Path(path).stem)


def _read_idx(path: Path, magic: int) -> np.ndarray:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise DatasetFormatError(f"{path}: {e}")
    if len(raw) < 4:
        raise DatasetFormatError(f"{path}: too short for an IDX header")
    found = int(np.frombuffer(raw[:4], dtype='>u4')[0])
    if found != magic:
        raise DatasetFormatError(f"{path}: IDX magic 0x{found:08x}, expected 0x{magic:08x}")
    n_dims = magic & 0xFF
    header_end = 4 + 4 * n_dims
    if len(raw) < header_end:
        raise DatasetFormatError(f"{path}: truncated IDX header")
    dims = tuple(int(d) for d in np.frombuffer(raw[4:header_end], dtype='>u4'))
    expected = int(np.prod(dims))
    body = np.frombuffer(raw[header_end:], dtype=np.uint8)
    if body.size != expected:
        raise DatasetFormatError(f"{path}: expected {expected} bytes of data, found {body.size}")
    return body.reshape(dims)


def load_idx(images_path: Path, labels_path: Path, n_classes: Optional[int] = None) -> Dataset:
    """Unsigned-byte IDX images (scaled to [0, 1]) with an IDX label file."""
    images = _read_idx(images_path, IDX_IMAGES_MAGIC)
    labels = _read_idx(labels_path, IDX_LABELS_MAGIC)
    if len(images) != len(labels):
        raise DatasetFormatError(f"{len(images)} images but {len(labels)} labels")
    if len(labels) == 0:
        raise EmptyDatasetError(f"{images_path}: no images")
    if n_classes is None:
        n_classes = max(int(labels.max()) + 1, 2)
    x = images[:, None, :, :].astype(np.float64) / 255.0
    return Dataset(x, labels.astype(np.int64), n_classes, name=Path(images_path).stem)


def load_dataset(source: DatasetSource) -> Dataset:
    """
    Load the dataset ``source`` describes.

    Raises:
        ConfigError: Unknown generator or malformed source
        DatasetFormatError: Malformed file or label out of range
    """
    if source.kind == 'synthetic':
        if source.size < 1:
            raise EmptyDatasetError(f"synthetic size must be positive, got {source.size}")
        generate = GENERATOR_REGISTRY.get_generator(source.generator)
        x, y, n_classes = generate(np.random.default_rng(source.seed), source.size)
        return Dataset(x, y, n_classes, name=source.generator)
    if source.kind == 'csv':
        if len(source.paths) != 1:
            raise ConfigError("csv source needs exactly one path")
        return load_csv(Path(source.paths[0]))
    if len(source.paths) != 2:
        raise ConfigError("idx source needs an images path and a labels path")
    return load_idx(Path(source.paths[0]), Path(source.paths[1]))
