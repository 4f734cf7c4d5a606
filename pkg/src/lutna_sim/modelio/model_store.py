"""
Model container: a JSON manifest next to a single raw tensor blob.

Blob layout, per compute layer in layer order, all little-endian:

- weights: one ``(sign, mag)`` pair of uint16 words per weight, row-major
- mask: one uint8 (0 or 1) per weight; a weight whose mask is 0 is stored as 0
- bias: one int64 per output unit, at accumulator precision

The manifest records every tensor's byte offset and length, the blob size
and its SHA-256.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..arith.fixedpoint import QuantParams
from ..arith.lutcore import MultiplierConfig
from ..errors import (
    LutnaError,
    ModelChecksumError,
    ModelFormatError,
    ModelVersionError,
    TruncatedBlobError,
)
from ..netsim.model import QuantLayer, QuantModel
from ..netsim.network import LayerSpec, infer_shapes, weight_shape

FORMAT_VERSION = 1

_WORD = np.dtype('<u2')
_MASK = np.dtype('u1')
_BIAS = np.dtype('<i8')


def blob_path_for(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix('.bin')


def _params_to_json(params: Optional[QuantParams]) -> Optional[Dict[str, Any]]:
    if params is None:
        return None
    return {'n_bits': params.n_bits, 'scale': float(params.scale)}


def _params_from_json(data: Optional[Dict[str, Any]]) -> Optional[QuantParams]:
    if data is None:
        return None
    return QuantParams(n_bits=int(data['n_bits']), scale=float(data['scale']))


def _multiplier_to_json(cfg: Optional[MultiplierConfig]) -> Optional[Dict[str, Any]]:
    if cfg is None:
        return None
    return {
        'scheme': cfg.scheme.value,
        'data_bits': cfg.data_bits,
        'weight_bits': cfg.weight_bits,
        'approx_split': cfg.approx_split,
        'storage_optimized': cfg.storage_optimized,
    }


def _multiplier_from_json(data: Optional[Dict[str, Any]]) -> Optional[MultiplierConfig]:
    if data is None:
        return None
    return MultiplierConfig(
        scheme=data['scheme'],
        data_bits=int(data['data_bits']),
        weight_bits=int(data['weight_bits']),
        approx_split=data.get('approx_split'),
        storage_optimized=bool(data.get('storage_optimized', True)),
    )


def _spec_to_json(spec: LayerSpec) -> Dict[str, Any]:
    return {
        'kind': spec.kind,
        'name': spec.name,
        'units': spec.units,
        'kernel': spec.kernel,
        'stride': spec.stride,
        'padding': spec.padding,
        'skip_from': spec.skip_from,
    }


def _spec_from_json(data: Dict[str, Any]) -> LayerSpec:
    return LayerSpec(
        kind=data['kind'],
        units=int(data.get('units', 0)),
        kernel=int(data.get('kernel', 0)),
        stride=data.get('stride'),
        padding=int(data.get('padding', 0)),
        skip_from=data.get('skip_from'),
        name=data.get('name', ''),
    )


def encode_weights(codes: np.ndarray) -> bytes:
    """Signed codes as interleaved (sign, mag) uint16 words."""
    flat = np.asarray(codes, dtype=np.int64).ravel()
    words = np.stack([(flat < 0).astype(np.int64), np.abs(flat)], axis=1)
    return words.astype(_WORD).tobytes()


def decode_weights(raw: bytes, shape: Tuple[int, ...]) -> np.ndarray:
    words = np.frombuffer(raw, dtype=_WORD).astype(np.int64).reshape(-1, 2)
    if np.any(words[:, 0] > 1):
        raise ModelFormatError("weight sign word must be 0 or 1")
    return np.where(words[:, 0] == 1, -words[:, 1], words[:, 1]).reshape(shape)


def save_model(model: QuantModel, path: Union[str, Path]) -> Path:
    """
    Write ``model`` as ``<path>`` (manifest) plus ``<path>.bin`` (blob).

    Returns:
        Path of the manifest
    """
    path = Path(path)
    blob_path = blob_path_for(path)
    chunks: List[bytes] = []
    offset = 0

    def add(raw: bytes) -> Dict[str, int]:
        nonlocal offset
        entry = {'offset': offset, 'length': len(raw)}
        chunks.append(raw)
        offset += len(raw)
        return entry

    layers = []
    for layer in model.layers:
        entry: Dict[str, Any] = {'spec': _spec_to_json(layer.spec)}
        if layer.is_compute:
            entry['weight_shape'] = list(layer.weight_codes.shape)
            entry['weight_params'] = _params_to_json(layer.weight_params)
            entry['multiplier'] = _multiplier_to_json(layer.multiplier)
            entry['tensors'] = {
                'weights': add(encode_weights(layer.weight_codes)),
                'mask': add(np.asarray(layer.mask, dtype=_MASK).tobytes()),
                'bias': add(np.asarray(layer.bias, dtype=_BIAS).tobytes()),
            }
        entry['out_params'] = _params_to_json(layer.out_params)
        layers.append(entry)

    blob = b''.join(chunks)
    manifest = {
        'format_version': FORMAT_VERSION,
        'name': model.name,
        'input_shape': list(model.input_shape),
        'input_params': _params_to_json(model.input_params),
        'act_bits': model.act_bits,
        'weight_bits': model.weight_bits,
        'provenance': model.provenance,
        'sparsity': {
            'weights': model.weight_count(),
            'surviving': model.surviving_count(),
            'sparsity': model.sparsity(),
        },
        'blob': {
            'file': blob_path.name,
            'size': len(blob),
            'sha256': hashlib.sha256(blob).hexdigest(),
        },
        'layers': layers,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    blob_path.write_bytes(blob)
    path.write_text(json.dumps(manifest, indent=2) + '\n')
    return path


def _check_extents(layers: List[Dict[str, Any]], blob_size: int, declared_size: int) -> None:
    extents = []
    for entry in layers:
        for name, tensor in entry.get('tensors', {}).items():
            start, length = int(tensor['offset']), int(tensor['length'])
            if start < 0 or length < 0:
                raise ModelFormatError(f"tensor '{name}' has a negative offset or length")
            extents.append((start, start + length, name))
    if blob_size < declared_size or any(end > blob_size for _, end, _ in extents):
        raise TruncatedBlobError(f"blob holds {blob_size} bytes, manifest needs {declared_size}")
    if blob_size > declared_size:
        raise ModelFormatError(f"blob holds {blob_size} bytes, manifest declares {declared_size}")
    extents.sort()
    for (_, end, name), (start, _, other) in zip(extents, extents[1:]):
        if start < end:
            raise ModelFormatError(f"tensors '{name}' and '{other}' overlap in the blob")


def load_model(path: Union[str, Path]) -> QuantModel:
    """
    Read a model written by :func:`save_model`.

    Raises:
        ModelVersionError: Unknown format version
        TruncatedBlobError: Blob shorter than the manifest requires
        ModelChecksumError: Blob bytes do not match the recorded SHA-256
        ModelFormatError: Any other malformed manifest or blob
    """
    path = Path(path)
    try:
        manifest = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ModelFormatError(f"{path}: {e}")
    version = manifest.get('format_version')
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"{path}: format version {version!r} is not supported (expected {FORMAT_VERSION})")

    try:
        blob_info = manifest['blob']
        blob_path = path.parent / blob_info['file']
        try:
            blob = blob_path.read_bytes()
        except OSError as e:
            raise ModelFormatError(f"{blob_path}: {e}")
        _check_extents(manifest['layers'], len(blob), int(blob_info['size']))
        if hashlib.sha256(blob).hexdigest() != blob_info['sha256']:
            raise ModelChecksumError(f"{blob_path}: SHA-256 does not match the manifest")

        input_shape = tuple(int(d) for d in manifest['input_shape'])
        specs = [_spec_from_json(entry['spec']) for entry in manifest['layers']]
        shapes = infer_shapes(input_shape, specs)
        layers = []
        for index, (entry, spec) in enumerate(zip(manifest['layers'], specs)):
            if not spec.is_compute:
                layers.append(QuantLayer(spec=spec, out_params=_params_from_json(entry.get('out_params'))))
                continue
            shape = tuple(int(d) for d in entry['weight_shape'])
            if shape != weight_shape(spec, shapes[index]):
                raise ModelFormatError(f"layer {index}: weight shape {shape} does not fit its input")
            count = int(np.prod(shape))
            tensors = entry['tensors']

            def view(name: str, itemsize: int, expected: int) -> bytes:
                start, length = int(tensors[name]['offset']), int(tensors[name]['length'])
                if length != expected * itemsize:
                    raise ModelFormatError(f"layer {index}: {name} needs {expected * itemsize} bytes, has {length}")
                return blob[start:start + length]

            mask = np.frombuffer(view('mask', _MASK.itemsize, count), dtype=_MASK).reshape(shape)
            if np.any(mask > 1):
                raise ModelFormatError(f"layer {index}: mask bytes must be 0 or 1")
            weight_codes = decode_weights(view('weights', 2 * _WORD.itemsize, count), shape)
            if np.any(weight_codes[mask == 0] != 0):
                raise ModelFormatError(f"layer {index}: pruned weights must be 0")
            layers.append(QuantLayer(
                spec=spec,
                weight_codes=weight_codes,
                weight_params=_params_from_json(entry['weight_params']),
                mask=mask.astype(bool),
                bias=np.frombuffer(view('bias', _BIAS.itemsize, spec.units), dtype=_BIAS).astype(np.int64),
                out_params=_params_from_json(entry.get('out_params')),
                multiplier=_multiplier_from_json(entry.get('multiplier')),
            ))
        return QuantModel(
            name=manifest.get('name', path.stem),
            input_shape=input_shape,
            input_params=_params_from_json(manifest['input_params']),
            layers=layers,
            act_bits=int(manifest.get('act_bits', 8)),
            weight_bits=int(manifest.get('weight_bits', 8)),
            provenance=dict(manifest.get('provenance', {})),
        )
    except LutnaError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"{path}: malformed manifest ({e})")
