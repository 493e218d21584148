"""Bit-level kernels over alpha planes, pure-Python edition.

`_kernels.pyx` is the compiled twin with identical signatures and semantics;
`icostego.kernels` picks whichever is importable. An alpha plane is one byte
per pixel in row-major order; a pixel is an embedding slot when its alpha is
>= ELIGIBLE_MIN (alpha 1 is excluded so that an LSB write can never turn an
eligible pixel fully transparent and desynchronize extraction).

Bit order is MSB-first within every byte, for payload bits, harvested bits
and consumed randomness alike.
"""

from __future__ import annotations

from collections import Counter

ELIGIBLE_MIN = 2

_EXTREMES_TABLE = bytes(
    0 if v == 1 else 255 if v == 254 else v for v in range(256)
)


def count_eligible(alpha) -> int:
    """Number of slots (alpha >= 2) in the plane."""
    return len(alpha) - alpha.count(0) - alpha.count(1)


def eligible_indices(alpha) -> list:
    """Pixel ordinals of every slot, in plane order."""
    return [i for i, a in enumerate(alpha) if a >= ELIGIBLE_MIN]


def write_lsbs(alpha, data, bit_start: int, max_bits: int) -> int:
    """Write bits [bit_start, bit_start+k) of `data` into the slot LSBs of
    `alpha` (mutated in place), k = min(max_bits, slot count). Returns k."""
    pos = bit_start
    end = bit_start + max_bits
    for i, a in enumerate(alpha):
        if pos >= end:
            break
        if a >= ELIGIBLE_MIN:
            bit = (data[pos >> 3] >> (7 - (pos & 7))) & 1
            alpha[i] = (a & 0xFE) | bit
            pos += 1
    return pos - bit_start


def read_lsbs(alpha, out, bit_start: int, max_bits: int) -> int:
    """Harvest slot LSBs into the bit positions [bit_start, ...) of `out`
    (a zeroed bytearray); inverse of write_lsbs. Returns bits read."""
    pos = bit_start
    end = bit_start + max_bits
    for a in alpha:
        if pos >= end:
            break
        if a >= ELIGIBLE_MIN:
            if a & 1:
                out[pos >> 3] |= 1 << (7 - (pos & 7))
            pos += 1
    return pos - bit_start


def lsb_counts(alpha) -> tuple:
    """(zeros, ones) of the LSB stream over slots."""
    # map slots to their LSB and everything else to 2, then count at C speed
    table = bytes(2 if v < ELIGIBLE_MIN else v & 1 for v in range(256))
    translated = bytes(alpha).translate(table)
    return translated.count(0), translated.count(1)


def alpha_histogram(alpha) -> list:
    """256-bin histogram of the full plane (callers mask bins 0 and 1)."""
    counts = Counter(bytes(alpha))
    return [counts.get(v, 0) for v in range(256)]


def randomize_lsbs(alpha, randbits) -> int:
    """Set every slot LSB from the MSB-first bit stream `randbits`.

    Returns bits consumed (= slot count); callers supply at least
    ceil(count_eligible/8) bytes of randomness."""
    pos = 0
    for i, a in enumerate(alpha):
        if a >= ELIGIBLE_MIN:
            bit = (randbits[pos >> 3] >> (7 - (pos & 7))) & 1
            alpha[i] = (a & 0xFE) | bit
            pos += 1
    return pos


def normalize_extremes(alpha) -> int:
    """Map alpha 1 -> 0 and 254 -> 255 in place; returns pixels changed."""
    changed = alpha.count(1) + alpha.count(254)
    if changed:
        alpha[:] = bytes(alpha).translate(_EXTREMES_TABLE)
    return changed


def classify_diff(cover, suspect, cap: int) -> tuple:
    """Per-pixel diff of two equal-size RGBA buffers.

    Buckets are disjoint with precedence RGB > alpha: a pixel counts as an
    RGB diff if any of R,G,B changed, otherwise by |delta alpha| (1 vs >= 2).
    Returns (lsb_count, other_count, rgb_count, indices) where indices lists
    the first `cap` differing pixel ordinals of any bucket.
    """
    if cover == suspect:
        return 0, 0, 0, []
    lsb = other = rgb = 0
    indices = []
    n = len(cover) // 4
    for i in range(n):
        base = 4 * i
        if cover[base : base + 4] == suspect[base : base + 4]:
            continue
        if (
            cover[base] != suspect[base]
            or cover[base + 1] != suspect[base + 1]
            or cover[base + 2] != suspect[base + 2]
        ):
            rgb += 1
        else:
            delta = cover[base + 3] - suspect[base + 3]
            if delta in (-1, 1):
                lsb += 1
            else:
                other += 1
        if len(indices) < cap:
            indices.append(i)
    return lsb, other, rgb, indices
