"""
Published reference figures, kept as data for side-by-side reporting.

None of these are reproduced by the simulator: the area/energy ratios come
from 45nm synthesis and the accuracies from full-scale CIFAR-10 models. They
are emitted next to computed values and always flagged as external.
"""

from typing import Dict, Optional, Tuple

from ..arith.lutcore import Scheme
from ..arith.registry import SCHEME_REGISTRY

REFERENCE_NOTE = "published reference, not independently derived"

# (design, baseline family) -> (baseline area / design area, baseline energy / design energy)
HEADLINE_RATIOS: Dict[Tuple[str, str], Tuple[float, float]] = {
    ('dnc-exact', 'digital'): (1.23, 1.80),
    ('dnc-exact', 'tlut'): (29.54, 3.34),
    ('dnc-approx', 'digital'): (2.64, 4.38),
    ('dnc-approx', 'tlut'): (62.85, 8.1),
}

# Model -> 32b baseline, 8b LUT-NA acc, 8b energy (uJ), 4b acc, 4b energy (uJ)
LUTNA_TABLE: Dict[str, Dict[str, float]] = {
    'vgg11': {'baseline_acc': 82.79, 'lutna8_acc': 82.73, 'lutna8_uj': 0.658, 'lutna4_acc': 55.93, 'lutna4_uj': 0.197},
    'vgg19': {'baseline_acc': 87.17, 'lutna8_acc': 86.73, 'lutna8_uj': 3.67, 'lutna4_acc': 37.93, 'lutna4_uj': 1.10},
    'resnet18': {'baseline_acc': 83.28, 'lutna8_acc': 83.13, 'lutna8_uj': 19.6, 'lutna4_acc': 24.39, 'lutna4_uj': 5.87},
    'resnet34': {'baseline_acc': 84.66, 'lutna8_acc': 84.98, 'lutna8_uj': 36.1, 'lutna4_acc': 36.13, 'lutna4_uj': 10.8},
    'googlenet': {'baseline_acc': 80.75, 'lutna8_acc': 80.58, 'lutna8_uj': 8.51, 'lutna4_acc': 58.99, 'lutna4_uj': 2.54},
}

# Model -> approximate 8b and mixed-precision results
APPROX_MIXED_TABLE: Dict[str, Dict[str, float]] = {
    'vgg11': {'approx_acc': 71.78, 'approx_uj': 0.271, 'approx_loss': 11.01, 'mixed_acc': 82.27, 'mixed_uj': 0.6, 'mixed_loss': 0.52},
    'vgg19': {'approx_acc': 76.48, 'approx_uj': 1.51, 'approx_loss': 10.69, 'mixed_acc': 85.98, 'mixed_uj': 2.61, 'mixed_loss': 1.19},
    'resnet18': {'approx_acc': 56.53, 'approx_uj': 8.10, 'approx_loss': 26.75, 'mixed_acc': 82.61, 'mixed_uj': 11.2, 'mixed_loss': 0.67},
    'resnet34': {'approx_acc': 63.4, 'approx_uj': 14.9, 'approx_loss': 21.26, 'mixed_acc': 83.55, 'mixed_uj': 19.3, 'mixed_loss': 1.11},
    'googlenet': {'approx_acc': 75.05, 'approx_uj': 3.51, 'approx_loss': 5.7, 'mixed_acc': 79.21, 'mixed_uj': 5.18, 'mixed_loss': 1.54},
}

# Model -> (policy, boundary layer) chosen for the mixed-precision results
MIXED_BOUNDARIES: Dict[str, Tuple[str, int]] = {
    'resnet18': ('exact_first', 36),
    'resnet34': ('exact_first', 48),
    'vgg11': ('approx_first', 1),
    'vgg19': ('approx_first', 4),
    'googlenet': ('approx_first', 69),
}


def scheme_family(scheme_value: str) -> str:
    if Scheme(scheme_value) in SCHEME_REGISTRY.get_schemes_by_family('digital'):
        return 'digital'
    return scheme_value


def headline_ratio(row_scheme: str, row_bits: int, baseline_scheme: str, baseline_bits: int) -> Optional[Tuple[float, float]]:
    """
    Published (area, energy) ratio of ``row`` to ``baseline`` for 8b designs.

    Returns:
        ``(row/baseline area, row/baseline energy)`` or None when the pair has
        no published figure
    """
    if row_bits != 8 or baseline_bits != 8:
        return None
    row, base = scheme_family(row_scheme), scheme_family(baseline_scheme)
    if (base, row) in HEADLINE_RATIOS:
        return HEADLINE_RATIOS[(base, row)]
    if (row, base) in HEADLINE_RATIOS:
        area_ratio, energy_ratio = HEADLINE_RATIOS[(row, base)]
        return 1.0 / area_ratio, 1.0 / energy_ratio
    return None
