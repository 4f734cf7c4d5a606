"""
Cumulative MAC profile of a model and the exact/approximate ordering policy
derived from it.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..errors import ConfigError
from ..netsim.model import QuantModel, layer_mac_counts
from ..netsim.network import Shape

APPROX_FIRST = 'approx_first'
EXACT_FIRST = 'exact_first'
POLICIES = (APPROX_FIRST, EXACT_FIRST)


@dataclass(frozen=True)
class MacProfile:
    """Surviving MACs per compute layer and the running percentage."""

    macs: List[int]
    cumulative_percent: List[float]

    @classmethod
    def from_macs(cls, macs: List[int]) -> "MacProfile":
        macs = [int(m) for m in macs]
        total = sum(macs)
        if total == 0:
            cumulative = [100.0] * len(macs)
        else:
            cumulative = [100.0 * c / total for c in np.cumsum(macs)]
            if cumulative:
                cumulative[-1] = 100.0
        return cls(macs=macs, cumulative_percent=cumulative)

    @property
    def layer_count(self) -> int:
        return len(self.macs)

    @property
    def total(self) -> int:
        return sum(self.macs)

    def percent_at(self, layers: float) -> float:
        """Cumulative percentage after ``layers`` layers, interpolated linearly."""
        points = np.concatenate([[0.0], self.cumulative_percent])
        return float(np.interp(layers, np.arange(len(points)), points))


def cumulative_mac_profile(model: QuantModel, input_shape: Optional[Shape] = None) -> MacProfile:
    return MacProfile.from_macs(layer_mac_counts(model, input_shape))


def choose_policy(profile: MacProfile) -> str:
    """
    ``approx_first`` when at least half of the MACs sit in the first half of
    the layers, otherwise ``exact_first``.

    Raises:
        ConfigError: If the profile has no layers
    """
    if profile.layer_count == 0:
        raise ConfigError("cannot choose a policy for a model without compute layers")
    return APPROX_FIRST if profile.percent_at(profile.layer_count / 2) >= 50.0 else EXACT_FIRST
