"""
Tests for the model manifest + blob container
"""

import hashlib
import json
import shutil
from pathlib import Path

import numpy as np
import pytest

from lutna_sim.arith.lutcore import MultiplierConfig, Scheme
from lutna_sim.errors import (
    ModelChecksumError,
    ModelFormatError,
    ModelVersionError,
    TruncatedBlobError,
)
from lutna_sim.modelio import FORMAT_VERSION, load_model, save_model
from lutna_sim.modelio.model_store import blob_path_for, decode_weights, encode_weights
from lutna_sim.netsim import assign_scheme, forward, predict

FIXTURES = Path(__file__).parent / 'fixtures'
GOLDEN_SHA256 = '2c6a296990e1135a369bfa22bc8488f624eb033e141c21b79f71f1038c72e342'


@pytest.fixture
def golden_copy(tmp_path):
    """Writable copy of the golden model."""
    for name in ('golden_mlp.json', 'golden_mlp.bin'):
        shutil.copy(FIXTURES / name, tmp_path / name)
    return tmp_path / 'golden_mlp.json'


def rewrite_manifest(path: Path, **changes) -> None:
    manifest = json.loads(path.read_text())
    manifest.update(changes)
    path.write_text(json.dumps(manifest))


class TestGoldenModel:
    """Test cases against the hand-built reference model"""

    def test_blob_checksum(self):
        raw = (FIXTURES / 'golden_mlp.bin').read_bytes()
        assert len(raw) == 72
        assert hashlib.sha256(raw).hexdigest() == GOLDEN_SHA256

    def test_load(self):
        model = load_model(FIXTURES / 'golden_mlp.json')
        assert model.name == 'golden_mlp'
        assert model.input_shape == (2,)
        assert [layer.kind for layer in model.layers] == ['dense', 'relu', 'dense']
        assert model.layers[0].weight_codes.tolist() == [[5, -3], [2, 7]]
        assert model.layers[2].mask.tolist() == [[True, False], [True, True]]
        assert model.layers[2].bias.tolist() == [0, 5]
        assert model.plan()[1] == MultiplierConfig(Scheme.DNC_APPROX, 8, 8, approx_split=4)
        assert model.sparsity() == 0.125
        assert model.provenance['source'] == 'hand-built fixture'

    def test_forward(self):
        model = load_model(FIXTURES / 'golden_mlp.json')
        result = forward(model, np.array([10, 20]))
        assert result.accumulators[0].tolist() == [[0, 140]]
        assert result.codes[1].tolist() == [[0, 28]]
        assert result.codes[2].tolist() == [[0, 28]]
        assert result.accumulators[2].tolist() == [[0, 101]]
        assert result.scores.tolist() == pytest.approx([[0.0, 101 / 50000]])

    def test_exact_classifier(self):
        model = load_model(FIXTURES / 'golden_mlp.json')
        exact = assign_scheme(model, MultiplierConfig(Scheme.DNC_EXACT, 8, 8))
        assert forward(exact, np.array([10, 20])).accumulators[2].tolist() == [[0, 173]]

    def test_predict(self):
        model = load_model(FIXTURES / 'golden_mlp.json')
        assert predict(model, np.array([[0.1, 0.2]])).tolist() == [1]


class TestSaveLoad:
    """Test cases for writing models"""

    def test_resave_is_byte_identical(self, tmp_path):
        model = load_model(FIXTURES / 'golden_mlp.json')
        path = save_model(model, tmp_path / 'copy.json')
        assert blob_path_for(path).read_bytes() == (FIXTURES / 'golden_mlp.bin').read_bytes()
        manifest = json.loads(path.read_text())
        golden = json.loads((FIXTURES / 'golden_mlp.json').read_text())
        assert manifest['blob']['file'] == 'copy.bin'
        manifest['blob']['file'] = golden['blob']['file']
        assert manifest == golden

    def test_round_trip_preserves_inference(self, tmp_path):
        model = load_model(FIXTURES / 'golden_mlp.json')
        reloaded = load_model(save_model(model, tmp_path / 'm.json'))
        x = np.array([[0.1, 0.2], [-0.3, 0.5], [1.0, -1.0]])
        np.testing.assert_array_equal(
            forward(reloaded, np.round(x * 100).astype(np.int64)).scores,
            forward(model, np.round(x * 100).astype(np.int64)).scores,
        )

    def test_weight_words(self):
        codes = np.array([[0, -1], [255, -65535]])
        raw = encode_weights(codes)
        assert raw[:8] == bytes([0, 0, 0, 0, 1, 0, 1, 0])
        assert decode_weights(raw, codes.shape).tolist() == codes.tolist()

    def test_bad_sign_word(self):
        with pytest.raises(ModelFormatError):
            decode_weights(bytes([2, 0, 1, 0]), (1,))


class TestCorruptModels:
    """Test cases for every way a stored model can be broken"""

    def test_flipped_byte(self, golden_copy):
        blob = blob_path_for(golden_copy)
        raw = bytearray(blob.read_bytes())
        raw[3] ^= 0x01
        blob.write_bytes(bytes(raw))
        with pytest.raises(ModelChecksumError):
            load_model(golden_copy)

    def test_unknown_version(self, golden_copy):
        rewrite_manifest(golden_copy, format_version=FORMAT_VERSION + 1)
        with pytest.raises(ModelVersionError):
            load_model(golden_copy)

    def test_truncated_blob(self, golden_copy):
        blob = blob_path_for(golden_copy)
        blob.write_bytes(blob.read_bytes()[:60])
        with pytest.raises(TruncatedBlobError):
            load_model(golden_copy)

    def test_oversized_blob(self, golden_copy):
        blob = blob_path_for(golden_copy)
        blob.write_bytes(blob.read_bytes() + b'\0')
        with pytest.raises(ModelFormatError):
            load_model(golden_copy)

    def test_missing_blob(self, golden_copy):
        blob_path_for(golden_copy).unlink()
        with pytest.raises(ModelFormatError):
            load_model(golden_copy)

    def test_not_json(self, tmp_path):
        path = tmp_path / 'model.json'
        path.write_text('{not json')
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_missing_key(self, golden_copy):
        manifest = json.loads(golden_copy.read_text())
        del manifest['input_params']
        golden_copy.write_text(json.dumps(manifest))
        with pytest.raises(ModelFormatError):
            load_model(golden_copy)

    def test_pruned_weight_not_zero(self, golden_copy):
        # classifier weight 1 is pruned; its magnitude word sits at bytes 42-43
        blob = blob_path_for(golden_copy)
        raw = bytearray(blob.read_bytes())
        assert raw[52:56] == bytes([1, 0, 1, 1])
        raw[42] = 5
        blob.write_bytes(bytes(raw))
        manifest = json.loads(golden_copy.read_text())
        rewrite_manifest(golden_copy, blob={**manifest['blob'], 'sha256': hashlib.sha256(bytes(raw)).hexdigest()})
        with pytest.raises(ModelFormatError, match='pruned weights must be 0'):
            load_model(golden_copy)


if __name__ == "__main__":
    pytest.main([__file__])
