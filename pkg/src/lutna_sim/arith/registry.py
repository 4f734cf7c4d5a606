"""
Registry of available multiplier schemes and their metadata.

This module provides a centralized registry of all multiplier schemes,
allowing for dynamic CLI option generation and scheme-driven dispatch.
"""

from typing import Any, Callable, Dict, List, Sequence

import numpy as np

from ..errors import LengthMismatchError
from .fixedpoint import SignMagWord
from .lutcore import (
    MultiplierConfig,
    Scheme,
    digital_multiply,
    dnc_approx_array,
    dnc_exact_array,
    dnc_multiply_approx,
    dnc_multiply_exact,
    exact_product_array,
    tlut_multiply,
)


class SchemeRegistry:
    """Registry for all available multiplier schemes."""

    def __init__(self):
        # Registry mapping scheme name to functions and metadata
        self._schemes: Dict[str, Dict[str, Any]] = {
            Scheme.TLUT.value: {
                'scheme': Scheme.TLUT,
                'function': tlut_multiply,
                'array_function': exact_product_array,
                'description': 'Traditional LUT: one stored product per possible data value',
                'family': 'lut',
                'exact': True,
            },
            Scheme.DNC_EXACT.value: {
                'scheme': Scheme.DNC_EXACT,
                'function': dnc_multiply_exact,
                'array_function': dnc_exact_array,
                'description': 'LUT-NA: 2-bit chunk lookups recombined by shift-add',
                'family': 'lut',
                'exact': True,
            },
            Scheme.DNC_APPROX.value: {
                'scheme': Scheme.DNC_APPROX,
                'function': dnc_multiply_approx,
                'array_function': dnc_approx_array,
                'description': 'A-LUT-NA: MSB-half lookup with the LSB-side product fixed at 0',
                'family': 'lut',
                'exact': False,
            },
            Scheme.DIGITAL_WALLACE.value: {
                'scheme': Scheme.DIGITAL_WALLACE,
                'function': digital_multiply,
                'array_function': exact_product_array,
                'description': 'Digital Wallace tree multiplier',
                'family': 'digital',
                'exact': True,
            },
            Scheme.DIGITAL_ARRAY.value: {
                'scheme': Scheme.DIGITAL_ARRAY,
                'function': digital_multiply,
                'array_function': exact_product_array,
                'description': 'Digital array multiplier',
                'family': 'digital',
                'exact': True,
            },
        }

    def get_all_scheme_names(self) -> List[str]:
        """Get list of all available scheme names."""
        return list(self._schemes.keys())

    def get_cli_choices(self) -> List[str]:
        """Get list of choices for CLI option, including 'all'."""
        return self.get_all_scheme_names() + ['all']

    def get_scheme_description(self, name: str) -> str:
        """Get description for a scheme name."""
        return self._schemes.get(name, {}).get('description', 'Unknown scheme')

    def resolve_schemes(self, requested: str) -> List[Scheme]:
        """
        Resolve a requested scheme name into the schemes it stands for.

        Args:
            requested: A scheme name, 'exact' for every exact-arithmetic
                scheme, or 'all'

        Returns:
            List of schemes in registry order
        """
        if requested == 'all':
            return [info['scheme'] for info in self._schemes.values()]
        if requested == 'exact':
            return self.exact_schemes()
        if requested in self._schemes:
            return [self._schemes[requested]['scheme']]
        raise KeyError(f"unknown scheme: {requested}")

    def exact_schemes(self) -> List[Scheme]:
        """Schemes whose products equal the integer product."""
        return [info['scheme'] for info in self._schemes.values() if info['exact']]

    def is_exact(self, scheme: Scheme) -> bool:
        return self._schemes[Scheme(scheme).value]['exact']

    def get_schemes_by_family(self, family: str) -> List[Scheme]:
        """Get all schemes in a family ('lut' or 'digital')."""
        return [
            info['scheme'] for info in self._schemes.values()
            if info.get('family') == family
        ]

    def scalar_function(self, scheme: Scheme) -> Callable[..., int]:
        return self._schemes[Scheme(scheme).value]['function']

    def array_function(self, scheme: Scheme) -> Callable[..., np.ndarray]:
        return self._schemes[Scheme(scheme).value]['array_function']


# Global registry instance
SCHEME_REGISTRY = SchemeRegistry()


def multiply(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> int:
    """Scalar multiply through whichever scheme ``cfg`` selects."""
    return SCHEME_REGISTRY.scalar_function(cfg.scheme)(w, d, cfg)


def multiply_array(w_codes: np.ndarray, d_codes: np.ndarray, cfg: MultiplierConfig) -> np.ndarray:
    """Broadcast multiply of signed code arrays through ``cfg``'s scheme."""
    return SCHEME_REGISTRY.array_function(cfg.scheme)(w_codes, d_codes, cfg)


def dot_product(w: Sequence[SignMagWord], d: Sequence[SignMagWord], cfg: MultiplierConfig) -> int:
    """
    Multiply-accumulate through the configured scheme.

    Accumulation is full-precision integer; Python integers are unbounded so
    the :func:`~lutna_sim.arith.lutcore.accumulator_bits` width is never
    exceeded.

    Raises:
        LengthMismatchError: If the vectors differ in length
    """
    if len(w) != len(d):
        raise LengthMismatchError(f"dot product of lengths {len(w)} and {len(d)}")
    return sum((multiply(wi, di, cfg) for wi, di in zip(w, d)), 0)
