"""
Test the scheme, architecture and dataset generator registries.
"""

import numpy as np
import pytest
from lutna_sim.arith import SCHEME_REGISTRY, Scheme
from lutna_sim.arith.fixedpoint import SignMagWord
from lutna_sim.arith.lutcore import MultiplierConfig, dnc_approx_array, dnc_multiply_exact
from lutna_sim.arith.registry import multiply, multiply_array
from lutna_sim.modelio.datasets import GENERATOR_REGISTRY
from lutna_sim.netsim.architectures import ARCHITECTURE_REGISTRY


def test_scheme_registry():
    """Test that the scheme registry provides dynamic functionality."""

    all_names = SCHEME_REGISTRY.get_all_scheme_names()
    assert all_names == ['tlut', 'dnc-exact', 'dnc-approx', 'wallace', 'array']

    # CLI choices include 'all'
    cli_choices = SCHEME_REGISTRY.get_cli_choices()
    assert 'all' in cli_choices
    assert len(cli_choices) == len(all_names) + 1

    assert SCHEME_REGISTRY.resolve_schemes('all') == list(Scheme)
    assert SCHEME_REGISTRY.resolve_schemes('dnc-approx') == [Scheme.DNC_APPROX]

    description = SCHEME_REGISTRY.get_scheme_description('dnc-approx')
    assert 'lsb' in description.lower()
    assert SCHEME_REGISTRY.get_scheme_description('nope') == 'Unknown scheme'


def test_exact_schemes():
    """The approximate scheme is the only inexact one."""
    exact = SCHEME_REGISTRY.resolve_schemes('exact')
    assert len(exact) == 4
    assert Scheme.DNC_APPROX not in exact
    assert not SCHEME_REGISTRY.is_exact(Scheme.DNC_APPROX)
    assert SCHEME_REGISTRY.is_exact('tlut')


def test_families():
    assert SCHEME_REGISTRY.get_schemes_by_family('digital') == [
        Scheme.DIGITAL_WALLACE,
        Scheme.DIGITAL_ARRAY,
    ]
    assert len(SCHEME_REGISTRY.get_schemes_by_family('lut')) == 3


def test_dispatch_functions():
    assert SCHEME_REGISTRY.scalar_function('dnc-exact') is dnc_multiply_exact
    assert SCHEME_REGISTRY.array_function(Scheme.DNC_APPROX) is dnc_approx_array


def test_multiply_routes_through_registry(monkeypatch):
    """Replacing a registry entry changes what multiply and multiply_array call."""
    cfg = MultiplierConfig(Scheme.DNC_EXACT, 4, 4)
    entry = dict(SCHEME_REGISTRY._schemes['dnc-exact'])
    entry['function'] = lambda w, d, c: -12345
    entry['array_function'] = lambda w, d, c: np.full(np.broadcast(w, d).shape, 7)
    monkeypatch.setitem(SCHEME_REGISTRY._schemes, 'dnc-exact', entry)

    assert multiply(SignMagWord.from_int(3, 4), SignMagWord.from_int(5, 4), cfg) == -12345
    assert multiply_array(np.array([1, 2]), np.array([3, 4]), cfg).tolist() == [7, 7]


def test_every_scheme_dispatches():
    """Each registered scheme resolves to callables that give the integer product."""
    for scheme in SCHEME_REGISTRY.exact_schemes():
        cfg = MultiplierConfig(scheme, 4, 4)
        assert multiply(SignMagWord.from_int(-7, 4), SignMagWord.from_int(9, 4), cfg) == -63
        assert multiply_array(np.array([-7, 15]), np.array([9, -15]), cfg).tolist() == [-63, -225]


def test_unknown_scheme():
    with pytest.raises(KeyError):
        SCHEME_REGISTRY.resolve_schemes('booth')


def test_architecture_and_generator_registries():
    assert ARCHITECTURE_REGISTRY.get_cli_choices() == ['mlp', 'cnn', 'resnet']
    assert 'residual' in ARCHITECTURE_REGISTRY.get_architecture_description('resnet')
    assert ARCHITECTURE_REGISTRY.get_architecture_description('vgg11') == 'Unknown architecture'

    assert GENERATOR_REGISTRY.get_all_generator_names() == ['two_gaussians', 'blobs', 'bars']
    assert 'images' in GENERATOR_REGISTRY.get_generator_description('bars')
    assert GENERATOR_REGISTRY.get_generator_description('spirals') == 'Unknown generator'


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
