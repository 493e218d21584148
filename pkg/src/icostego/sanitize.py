"""Neutralization of alpha-LSB payloads with at most one unit of alpha change.

randomize_lsb replaces every eligible alpha LSB with an independent uniform
random bit: any payload occupying b slot bits survives with probability
about 2^-min(b, 32) (each bit matches by coin flip; the frame's magic and
CRC32 reject everything else). Randomizing rather than zeroing avoids
leaving a fingerprint of its own and keeps LSB entropy natural-looking.

normalize_extremes pins the near-extreme alphas (1 -> 0, 254 -> 255) so
fully opaque regions are exactly 255 and the alpha=1 ambiguity disappears;
"both" normalizes first, then randomizes.

RGB bytes and fully transparent pixels are never touched in any mode.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, replace
from enum import Enum

from icostego import kernels
from icostego.codec import decode_frame, encode_frame
from icostego.container import IcoFile
from icostego.engine import EmbedOptions, extract
from icostego.errors import FrameDecodeError, IcoStegoError


class SanitizeMode(Enum):
    RANDOMIZE_LSB = "randomize_lsb"
    NORMALIZE_EXTREMES = "normalize_extremes"
    BOTH = "both"


@dataclass(frozen=True)
class SanitizeOptions:
    """rng_seed makes runs reproducible; without it the randomness comes
    from the OS entropy source."""

    mode: SanitizeMode = SanitizeMode.BOTH
    rng_seed: int | None = None


@dataclass(frozen=True)
class NeutralizationCheck:
    """Truthy iff no payload is recoverable; carries the reason otherwise."""

    neutralized: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.neutralized


def sanitize(ico: IcoFile, options: SanitizeOptions = SanitizeOptions()) -> IcoFile:
    """Return a new IcoFile with any LSB-borne payload destroyed.

    Entries whose pixels end up unchanged are carried over byte-identically;
    changed entries are re-encoded in their original frame format.
    """
    rng = random.Random(options.rng_seed) if options.rng_seed is not None else None
    do_normalize = options.mode in (SanitizeMode.NORMALIZE_EXTREMES, SanitizeMode.BOTH)
    do_randomize = options.mode in (SanitizeMode.RANDOMIZE_LSB, SanitizeMode.BOTH)

    new_entries = list(ico.entries)
    for i, entry in enumerate(ico.entries):
        image = decode_frame(entry)
        alpha = image.alpha_plane()
        before = bytes(alpha)
        if do_normalize:
            kernels.normalize_extremes(alpha)
        if do_randomize:
            slots = kernels.count_eligible(alpha)
            if slots:
                kernels.randomize_lsbs(alpha, _random_bytes(rng, (slots + 7) // 8))
        if bytes(alpha) == before:
            continue
        image.set_alpha_plane(alpha)
        new_entries[i] = replace(
            entry,
            frame_bytes=encode_frame(image, entry.frame_format),
            bit_count=32,
            color_count=0,
        )
    return IcoFile(entries=new_entries, trailing_bytes=ico.trailing_bytes)


def verify_neutralized(ico: IcoFile) -> NeutralizationCheck:
    """True iff extraction fails under both the single-largest-entry and
    all-entries conventions. A codec failure reports False with the reason
    (neutralization cannot be proven on an undecodable file)."""
    for selection in ("largest", "all"):
        try:
            extract(ico, EmbedOptions(entry_selection=selection))
        except FrameDecodeError:
            continue
        except IcoStegoError as exc:
            return NeutralizationCheck(False, f"cannot verify, decode failed: {exc}")
        return NeutralizationCheck(
            False, f"payload still recoverable with entry_selection={selection!r}"
        )
    return NeutralizationCheck(True)


def _random_bytes(rng: random.Random | None, n: int) -> bytes:
    if rng is None:
        return os.urandom(n)
    return rng.randbytes(n)
