"""
Component counts for every multiplier configuration.

Counting rules:

- D&C (storage-optimized): one bank per weight shared by every chunk
  (``2*n_w + 1`` stored cells plus a fixed per-multiplier overhead), one
  4:1 ``(n_w + 2)``-bit mux per 4-bit data slice, and the shift-add tree that
  recombines the chunk products. The overhead is fixed so the 4b design lands
  on 12 cells (exact) and 10 cells (approximate).
- D&C (unoptimized): a full ``4 x (n_w + 2)`` bit table and a 4:1 mux per chunk.
- A-LUT-NA: one half-width exact unit whose data input is steered from the
  MSB or LSB half; no final adder. The half-select steering mux, the
  MSB-half zero detect and the output shift select are not counted, in line
  with the 4b anchor of 10 cells and 18 muxes that carries none of them.
  The approximate count therefore equals the half-width exact unit plus its
  storage, and its savings against D&C exact are an upper bound.
- T-LUT: ``2**n_d`` stored products and a full mux tree.
- Array / Wallace: textbook partial-product structures.
"""

from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Tuple

from ..arith.lutcore import CHUNK_BITS, MultiplierConfig, Scheme

# Cells the published 4b totals carry beyond the stored bank entries.
EXACT_STORAGE_OVERHEAD = 3
APPROX_STORAGE_OVERHEAD = 1


@dataclass(frozen=True)
class ComponentCount:
    """Counts of 1-bit hardware primitives."""

    sram_cells: int = 0
    mux2x1_1b: int = 0
    half_adders: int = 0
    full_adders: int = 0
    xor_gates: int = 0
    and_gates: int = 0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"{f.name} cannot be negative")

    def __add__(self, other: "ComponentCount") -> "ComponentCount":
        return ComponentCount(**{
            f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)
        })

    def scaled(self, factor: int) -> "ComponentCount":
        return ComponentCount(**{f.name: getattr(self, f.name) * factor for f in fields(self)})

    def dominates(self, other: "ComponentCount") -> bool:
        """True when every count is >= the other's."""
        return all(getattr(self, f.name) >= getattr(other, f.name) for f in fields(self))

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


def shift_add_adders(partial_width: int, n_chunks: int) -> Tuple[int, int]:
    """
    Half/full adders of the pairwise shift-add tree over chunk products.

    Each combine adds an upper operand shifted left by ``shift`` onto a lower
    one: the first overlapping bit needs a half adder, the remaining overlap
    needs full adders, and the upper operand's non-overlapping bits need half
    adders for the carry ripple.

    Returns:
        Tuple of (half_adders, full_adders)
    """
    # (width, offset) per partial product
    partials: List[Tuple[int, int]] = [
        (partial_width, CHUNK_BITS * k) for k in range(n_chunks)
    ]
    half = full = 0
    while len(partials) > 1:
        merged = []
        for i in range(0, len(partials) - 1, 2):
            (lo_width, lo_offset), (hi_width, hi_offset) = partials[i], partials[i + 1]
            shift = hi_offset - lo_offset
            overlap = lo_width - shift
            half += 1 + (hi_width - overlap)
            full += overlap - 1
            merged.append((shift + hi_width, lo_offset))
        if len(partials) % 2:
            merged.append(partials[-1])
        partials = merged
    return half, full


def _slices(data_bits: int) -> int:
    return max(1, data_bits // 4)


def _dnc_exact_count(cfg: MultiplierConfig) -> ComponentCount:
    n_w = cfg.weight_bits
    entry_bits = n_w + CHUNK_BITS
    chunks = cfg.data_bits // CHUNK_BITS
    half, full = shift_add_adders(entry_bits, chunks)
    if cfg.storage_optimized:
        sram = 2 * n_w + 1 + EXACT_STORAGE_OVERHEAD
        mux = _slices(cfg.data_bits) * 3 * entry_bits
    else:
        sram = chunks * 4 * entry_bits
        mux = chunks * 3 * entry_bits
    return ComponentCount(
        sram_cells=sram,
        mux2x1_1b=mux,
        half_adders=half,
        full_adders=full,
        xor_gates=1,
    )


def _dnc_approx_count(cfg: MultiplierConfig) -> ComponentCount:
    n_w = cfg.weight_bits
    entry_bits = n_w + CHUNK_BITS
    half_bits = max(cfg.approx_split, cfg.data_bits - cfg.approx_split)
    half, full = shift_add_adders(entry_bits, half_bits // CHUNK_BITS)
    if cfg.storage_optimized:
        sram = 2 * n_w + 1 + APPROX_STORAGE_OVERHEAD
    else:
        sram = (half_bits // CHUNK_BITS) * 4 * entry_bits
    return ComponentCount(
        sram_cells=sram,
        mux2x1_1b=_slices(half_bits) * 3 * entry_bits,
        half_adders=half,
        full_adders=full,
        xor_gates=1,
    )


def _tlut_count(cfg: MultiplierConfig) -> ComponentCount:
    width = cfg.data_bits + cfg.weight_bits
    entries = 1 << cfg.data_bits
    return ComponentCount(
        sram_cells=entries * width,
        mux2x1_1b=(entries - 1) * width,
        xor_gates=1,
    )


def _array_count(cfg: MultiplierConfig) -> ComponentCount:
    n = max(cfg.data_bits, cfg.weight_bits)
    return ComponentCount(
        and_gates=n * n,
        full_adders=n * (n - 2),
        half_adders=n,
        xor_gates=1,
    )


def wallace_adders(n: int) -> Tuple[int, int]:
    """
    Half/full adders of an n x n Wallace tree plus its final ripple adder.

    Every reduction layer groups each column into triples (full adder) and a
    leftover pair (half adder) until no column holds more than two bits.
    """
    heights = [min(c + 1, 2 * n - 1 - c) for c in range(2 * n - 1)]
    half = full = 0
    while max(heights) > 2:
        reduced = [0] * (len(heights) + 1)
        for column, height in enumerate(heights):
            triples, rest = divmod(height, 3)
            pairs = 1 if rest == 2 else 0
            full += triples
            half += pairs
            reduced[column] += triples + pairs + (1 if rest == 1 else 0)
            reduced[column + 1] += triples + pairs
        while reduced and reduced[-1] == 0:
            reduced.pop()
        heights = reduced

    carry = False
    started = False
    for height in heights:
        bits = height + (1 if carry else 0)
        if not started and height < 2:
            continue
        started = True
        if bits == 3:
            full += 1
            carry = True
        elif bits == 2:
            half += 1
            carry = True
        else:
            carry = False
    return half, full


def _wallace_count(cfg: MultiplierConfig) -> ComponentCount:
    n = max(cfg.data_bits, cfg.weight_bits)
    half, full = wallace_adders(n)
    return ComponentCount(
        and_gates=n * n,
        half_adders=half,
        full_adders=full,
        xor_gates=1,
    )


_COUNTERS = {
    Scheme.DNC_EXACT: _dnc_exact_count,
    Scheme.DNC_APPROX: _dnc_approx_count,
    Scheme.TLUT: _tlut_count,
    Scheme.DIGITAL_ARRAY: _array_count,
    Scheme.DIGITAL_WALLACE: _wallace_count,
}


def component_count(cfg: MultiplierConfig) -> ComponentCount:
    """Component counts of one multiplier instance."""
    return _COUNTERS[cfg.scheme](cfg)
