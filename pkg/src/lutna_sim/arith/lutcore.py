"""
Bit-exact models of the LUT-NA multiplier family.

A constant weight ``w`` is stored once as a small bank of ``w x j`` products
(``j`` in 0..3). The data operand is cut into 2-bit chunks, each chunk selects
one bank entry through a 4:1 mux, and the selected partial products are
recombined by shift-add (exact divide-and-conquer). The approximate variant
splits the data operand into an MSB half and an LSB half and only ever
evaluates one of them:

- MSB half non-zero: ``(w x d_H) << split`` with the LSB-side product fixed at 0
- MSB half zero: ``w x d_L``
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigError, WidthOverflowError
from .fixedpoint import SignMagWord, max_code

CHUNK_BITS = 2
SUPPORTED_WIDTHS = (2, 4, 8, 16)


class Scheme(str, Enum):
    """Multiplier implementations known to the simulator."""

    TLUT = "tlut"
    DNC_EXACT = "dnc-exact"
    DNC_APPROX = "dnc-approx"
    DIGITAL_WALLACE = "wallace"
    DIGITAL_ARRAY = "array"

    @property
    def is_dnc(self) -> bool:
        return self in (Scheme.DNC_EXACT, Scheme.DNC_APPROX)


@dataclass(frozen=True)
class MultiplierConfig:
    """Scheme selector plus operand widths; the unit of cost accounting."""

    scheme: Scheme
    data_bits: int = 8
    weight_bits: int = 8
    chunk_bits: int = CHUNK_BITS
    approx_split: Optional[int] = None
    storage_optimized: bool = True

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        for label, bits in (("data_bits", self.data_bits), ("weight_bits", self.weight_bits)):
            if bits not in SUPPORTED_WIDTHS:
                raise ConfigError(f"{label} must be one of {SUPPORTED_WIDTHS}, got {bits}")
        if self.chunk_bits != CHUNK_BITS:
            raise ConfigError(f"only {CHUNK_BITS}-bit chunks are modeled, got {self.chunk_bits}")
        if self.scheme.is_dnc and self.data_bits % 2:
            raise ConfigError("D&C schemes need an even data width")
        if self.scheme is Scheme.DNC_APPROX:
            split = self.data_bits // 2 if self.approx_split is None else self.approx_split
            if not 0 < split < self.data_bits or split % 2:
                raise ConfigError(
                    f"approx_split must be even and inside (0, {self.data_bits}), got {split}"
                )
            object.__setattr__(self, "approx_split", split)
        elif self.approx_split is not None:
            raise ConfigError("approx_split only applies to the dnc-approx scheme")

    @classmethod
    def for_bits(cls, scheme: Scheme, act_bits: int, weight_bits: int, **kwargs) -> "MultiplierConfig":
        """Smallest supported datapath able to hold ``act_bits`` x ``weight_bits`` magnitudes."""
        return cls(
            scheme=scheme,
            data_bits=_round_up_width(act_bits),
            weight_bits=_round_up_width(weight_bits),
            **kwargs,
        )

    @property
    def config_id(self) -> str:
        if self.data_bits == self.weight_bits:
            name = f"{self.scheme.value}-{self.data_bits}"
        else:
            name = f"{self.scheme.value}-{self.data_bits}x{self.weight_bits}"
        if self.scheme is Scheme.DNC_APPROX and self.approx_split != self.data_bits // 2:
            name += f"-s{self.approx_split}"
        if self.scheme.is_dnc and not self.storage_optimized:
            name += "-raw"
        return name


def _round_up_width(bits: int) -> int:
    for width in SUPPORTED_WIDTHS:
        if bits <= width:
            return width
    raise ConfigError(f"no supported multiplier width holds {bits} bits")


@dataclass(frozen=True)
class LutBank:
    """
    Stored ``w x j`` products for one constant weight.

    ``stored_cells`` counts the SRAM cells each entry really needs once the
    storage optimization is applied: ``w x 0`` is a wired zero, ``w x 2`` is a
    wired shift of ``w x 1``, and the LSB of ``w x 3`` is wired to the LSB of
    ``w``.
    """

    weight_mag: int
    n_w: int
    chunk_bits: int = CHUNK_BITS
    entries: Tuple[int, ...] = field(default=())
    stored_cells: Tuple[int, ...] = field(default=())

    @property
    def total_stored_cells(self) -> int:
        return sum(self.stored_cells)

    @property
    def entry_bits(self) -> int:
        return self.n_w + self.chunk_bits


def build_lut_bank(weight_mag: int, n_w: int) -> LutBank:
    """
    Build the storage-optimized bank of a constant weight.

    Raises:
        WidthOverflowError: If ``weight_mag`` does not fit in ``n_w`` bits
    """
    if n_w < 1 or not 0 <= weight_mag <= max_code(n_w):
        raise WidthOverflowError(f"weight {weight_mag} does not fit in {n_w} bits")
    entries = tuple(weight_mag * j for j in range(1 << CHUNK_BITS))
    stored_cells = (0, n_w, 0, n_w + 1)
    return LutBank(
        weight_mag=weight_mag,
        n_w=n_w,
        entries=entries,
        stored_cells=stored_cells,
    )


def lut_chunk_multiply(bank: LutBank, chunk: int) -> int:
    """4:1 mux select of one bank entry."""
    if not 0 <= chunk < len(bank.entries):
        raise WidthOverflowError(f"chunk {chunk} is wider than {bank.chunk_bits} bits")
    return bank.entries[chunk]


def _dnc_magnitude(bank: LutBank, d_mag: int, n_bits: int) -> int:
    total = 0
    for k in range(n_bits // CHUNK_BITS):
        chunk = (d_mag >> (CHUNK_BITS * k)) & ((1 << CHUNK_BITS) - 1)
        total += lut_chunk_multiply(bank, chunk) << (CHUNK_BITS * k)
    return total


def _check_operands(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> None:
    if w.mag > max_code(cfg.weight_bits):
        raise WidthOverflowError(f"weight magnitude {w.mag} exceeds {cfg.weight_bits} bits")
    if d.mag > max_code(cfg.data_bits):
        raise WidthOverflowError(f"data magnitude {d.mag} exceeds {cfg.data_bits} bits")


def _check_scheme(cfg: MultiplierConfig, expected: Scheme) -> None:
    if cfg.scheme is not expected:
        raise ConfigError(f"{expected.value} multiply called with a {cfg.scheme.value} config")


def _signed(sign: int, mag: int) -> int:
    return -mag if sign and mag else mag


def dnc_multiply_exact(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> int:
    """Exact divide-and-conquer multiply; equals the integer product."""
    _check_scheme(cfg, Scheme.DNC_EXACT)
    _check_operands(w, d, cfg)
    bank = build_lut_bank(w.mag, cfg.weight_bits)
    return _signed(w.sign ^ d.sign, _dnc_magnitude(bank, d.mag, cfg.data_bits))


def dnc_multiply_approx(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> int:
    """Approximate D&C multiply with the LSB-side product fixed at zero."""
    _check_scheme(cfg, Scheme.DNC_APPROX)
    _check_operands(w, d, cfg)
    split = cfg.approx_split
    bank = build_lut_bank(w.mag, cfg.weight_bits)
    d_high = d.mag >> split
    if d_high:
        mag = _dnc_magnitude(bank, d_high, cfg.data_bits - split) << split
    else:
        mag = _dnc_magnitude(bank, d.mag & max_code(split), split)
    return _signed(w.sign ^ d.sign, mag)


@lru_cache(maxsize=1024)
def _tlut_table(weight_mag: int, data_bits: int) -> Tuple[int, ...]:
    return tuple(weight_mag * d for d in range(1 << data_bits))


def tlut_multiply(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> int:
    """Read a ``2**data_bits`` entry constant-weight table indexed by ``d``."""
    _check_scheme(cfg, Scheme.TLUT)
    _check_operands(w, d, cfg)
    return _signed(w.sign ^ d.sign, _tlut_table(w.mag, cfg.data_bits)[d.mag])


def digital_multiply(w: SignMagWord, d: SignMagWord, cfg: MultiplierConfig) -> int:
    """Wallace tree and array multipliers compute the exact product."""
    if cfg.scheme not in (Scheme.DIGITAL_WALLACE, Scheme.DIGITAL_ARRAY):
        raise ConfigError(f"digital multiply called with a {cfg.scheme.value} config")
    _check_operands(w, d, cfg)
    return _signed(w.sign ^ d.sign, w.mag * d.mag)


# Array models. Operands are signed integer codes; magnitudes must fit the
# configured widths.

def _check_array_operands(w_mag: np.ndarray, d_mag: np.ndarray, cfg: MultiplierConfig) -> None:
    if w_mag.size and int(w_mag.max()) > max_code(cfg.weight_bits):
        raise WidthOverflowError(f"weight magnitudes exceed {cfg.weight_bits} bits")
    if d_mag.size and int(d_mag.max()) > max_code(cfg.data_bits):
        raise WidthOverflowError(f"data magnitudes exceed {cfg.data_bits} bits")


def _mux_select(w_mag: np.ndarray, chunk: np.ndarray) -> np.ndarray:
    # entry 1 is stored, entry 2 is entry 1 wired one bit left, entry 3 is stored
    entry1 = w_mag
    entry2 = w_mag << 1
    entry3 = w_mag + entry2
    return np.where(chunk == 0, 0, np.where(chunk == 1, entry1, np.where(chunk == 2, entry2, entry3)))


def dnc_magnitude_array(w_mag: np.ndarray, d_mag: np.ndarray, n_bits: int) -> np.ndarray:
    """Chunk-by-chunk mux select and shift-add over broadcast arrays."""
    total = np.zeros(np.broadcast_shapes(np.shape(w_mag), np.shape(d_mag)), dtype=np.int64)
    for k in range(n_bits // CHUNK_BITS):
        chunk = (d_mag >> (CHUNK_BITS * k)) & ((1 << CHUNK_BITS) - 1)
        total += _mux_select(w_mag, chunk) << (CHUNK_BITS * k)
    return total


def _split_codes(w_codes, d_codes):
    w = np.asarray(w_codes, dtype=np.int64)
    d = np.asarray(d_codes, dtype=np.int64)
    negative = (w < 0) ^ (d < 0)
    return np.abs(w), np.abs(d), negative


def dnc_exact_array(w_codes: np.ndarray, d_codes: np.ndarray, cfg: MultiplierConfig) -> np.ndarray:
    w_mag, d_mag, negative = _split_codes(w_codes, d_codes)
    _check_array_operands(w_mag, d_mag, cfg)
    mag = dnc_magnitude_array(w_mag, d_mag, cfg.data_bits)
    return np.where(negative, -mag, mag)


def dnc_approx_array(w_codes: np.ndarray, d_codes: np.ndarray, cfg: MultiplierConfig) -> np.ndarray:
    w_mag, d_mag, negative = _split_codes(w_codes, d_codes)
    _check_array_operands(w_mag, d_mag, cfg)
    split = cfg.approx_split
    d_high = d_mag >> split
    d_low = d_mag & max_code(split)
    high = dnc_magnitude_array(w_mag, d_high, cfg.data_bits - split) << split
    low = dnc_magnitude_array(w_mag, d_low, split)
    mag = np.where(d_high != 0, high, low)
    return np.where(negative, -mag, mag)


def exact_product_array(w_codes: np.ndarray, d_codes: np.ndarray, cfg: MultiplierConfig) -> np.ndarray:
    """T-LUT and digital schemes: a constant-weight table read returns exactly ``w*d``."""
    w_mag, d_mag, negative = _split_codes(w_codes, d_codes)
    _check_array_operands(w_mag, d_mag, cfg)
    mag = w_mag * d_mag
    return np.where(negative, -mag, mag)


def accumulator_bits(cfg: MultiplierConfig, length: int) -> int:
    """Accumulator width that cannot overflow for ``length`` products plus sign."""
    return cfg.data_bits + cfg.weight_bits + 2 + max(0, (max(length, 1) - 1).bit_length())
