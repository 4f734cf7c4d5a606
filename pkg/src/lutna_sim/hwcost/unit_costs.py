"""
Per-component area and energy constants.

Unit costs are read from a flat INI file with an ``[area]`` and an ``[energy]``
section keyed by :class:`ComponentCount` field names. The default file ships
inside the package.
"""

import configparser
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Union

from ..arith.lutcore import MultiplierConfig
from ..errors import ConfigError
from .components import ComponentCount, component_count

COMPONENT_FIELDS = tuple(f.name for f in fields(ComponentCount))


@dataclass(frozen=True)
class UnitCosts:
    """Area and per-operation energy of each component type."""

    area: Dict[str, float]
    energy: Dict[str, float]
    source: str = "<inline>"

    def __post_init__(self):
        for section, table in (("area", self.area), ("energy", self.energy)):
            for name in COMPONENT_FIELDS:
                value = table.get(name)
                if value is None:
                    raise ConfigError(f"{self.source}: missing {section}.{name}")
                if not value > 0:
                    raise ConfigError(f"{self.source}: {section}.{name} must be > 0, got {value}")

    @classmethod
    def uniform(cls, area: float = 1.0, energy: float = 1.0) -> "UnitCosts":
        """Equal cost for every component; handy for count-dominance checks."""
        return cls(
            area={name: area for name in COMPONENT_FIELDS},
            energy={name: energy for name in COMPONENT_FIELDS},
            source="<uniform>",
        )


def default_unit_costs_path():
    return resources.files("lutna_sim").joinpath("data", "unit_costs.ini")


def load_unit_costs(path: Optional[Union[str, Path]] = None) -> UnitCosts:
    """
    Load unit costs from an INI file (default: the packaged file).

    Raises:
        ConfigError: If the file is unreadable, a key is missing, or a value
            is not a positive number
    """
    parser = configparser.ConfigParser()
    if path is None:
        source = "unit_costs.ini"
        text = default_unit_costs_path().read_text(encoding="utf-8")
    else:
        source = str(path)
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read unit costs {path}: {e}") from e

    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigError(f"malformed unit costs file {source}: {e}") from e

    tables: Dict[str, Dict[str, float]] = {}
    for section in ("area", "energy"):
        if not parser.has_section(section):
            raise ConfigError(f"{source}: missing [{section}] section")
        table = {}
        for key, raw in parser.items(section):
            if key not in COMPONENT_FIELDS:
                raise ConfigError(f"{source}: unknown component '{key}' in [{section}]")
            try:
                table[key] = float(raw)
            except ValueError as e:
                raise ConfigError(f"{source}: {section}.{key} is not a number: {raw!r}") from e
        tables[section] = table

    return UnitCosts(area=tables["area"], energy=tables["energy"], source=source)


def _counts(target: Union[MultiplierConfig, ComponentCount]) -> ComponentCount:
    if isinstance(target, ComponentCount):
        return target
    return component_count(target)


def area(target: Union[MultiplierConfig, ComponentCount], costs: UnitCosts) -> float:
    """Area of a configuration (or a raw count) in area units."""
    counts = _counts(target).as_dict()
    return float(sum(counts[name] * costs.area[name] for name in COMPONENT_FIELDS))


def energy_per_mac(target: Union[MultiplierConfig, ComponentCount], costs: UnitCosts) -> float:
    """
    Energy of one multiply in energy units.

    The A-LUT-NA count already holds only the half-width unit that is active
    for a given operand, so every counted component is charged once.
    """
    counts = _counts(target).as_dict()
    return float(sum(counts[name] * costs.energy[name] for name in COMPONENT_FIELDS))
