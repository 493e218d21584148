"""LSB embedder and extractor over the concatenated alpha planes of an ICO.

The channel convention, shared with the browser extractor:

* entries are visited in directory order, restricted by the entry selection;
* within an entry, pixels in row-major top-down order;
* a pixel is a slot when its cover alpha is >= 2 (alpha 1 is excluded: an
  LSB write could drop it to 0 and change the slot set the extractor sees);
* payload bits are written MSB-first into slot alpha LSBs, one bit per slot.

Embedding frames the payload first (magic, flags, length, CRC32), writes
only the framed bits, and leaves every other byte of the file untouched:
RGB never changes, transparent pixels never change, slots past the frame
keep their cover LSBs, and untouched entries keep byte-identical frames.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal, Union

from icostego import kernels
from icostego.codec import RgbaImage, decode_frame, encode_frame
from icostego.container import IcoFile
from icostego.errors import PayloadTooLarge
from icostego.framing import OVERHEAD, frame_decode, frame_encode

EntrySelection = Union[int, Literal["all", "largest"]]


@dataclass(frozen=True)
class EmbedOptions:
    """`entry_selection` picks the carrier: a single entry index, "largest"
    (single entry with the greatest directory area, the default), or "all"
    (one continuous buffer across every entry's alpha plane)."""

    entry_selection: EntrySelection = "largest"


@dataclass(frozen=True)
class EmbedSlot:
    entry_index: int
    pixel_index: int


@dataclass(frozen=True)
class EntryCapacity:
    entry_index: int
    width: int
    height: int
    eligible_pixels: int
    eligible_fraction: float


@dataclass(frozen=True)
class CapacityReport:
    """Embeddable-bit accounting over the selected entries.

    net_capacity_bytes is the usable payload size: gross minus the 12-byte
    frame overhead (assuming an incompressible payload).
    """

    per_entry: list[EntryCapacity]
    total_eligible_bits: int
    gross_capacity_bytes: int
    net_capacity_bytes: int

    def to_json_dict(self) -> dict:
        return {
            "per_entry": [
                {
                    "entry_index": e.entry_index,
                    "width": e.width,
                    "height": e.height,
                    "eligible_pixels": e.eligible_pixels,
                    "eligible_fraction": e.eligible_fraction,
                }
                for e in self.per_entry
            ],
            "total_eligible_bits": self.total_eligible_bits,
            "gross_capacity_bytes": self.gross_capacity_bytes,
            "net_capacity_bytes": self.net_capacity_bytes,
        }


def select_entries(ico: IcoFile, options: EmbedOptions) -> list[int]:
    """Resolve the entry selection to directory indices, in directory order.

    "largest" compares directory width x height; ties go to the first entry.
    """
    selection = options.entry_selection
    if selection == "all":
        return list(range(len(ico.entries)))
    if selection == "largest":
        areas = [e.width_px * e.height_px for e in ico.entries]
        return [areas.index(max(areas))]
    index = int(selection)
    if not 0 <= index < len(ico.entries):
        raise IndexError(
            f"entry index {index} out of range for {len(ico.entries)} entries"
        )
    return [index]


def _decoded_planes(
    ico: IcoFile, selected: list[int]
) -> tuple[list[RgbaImage], list[bytearray]]:
    images = [decode_frame(ico.entries[i]) for i in selected]
    return images, [img.alpha_plane() for img in images]


def eligible_slots(ico: IcoFile, options: EmbedOptions = EmbedOptions()) -> list[EmbedSlot]:
    """Every slot of the selection, in the deterministic channel order."""
    slots: list[EmbedSlot] = []
    selected = select_entries(ico, options)
    _, planes = _decoded_planes(ico, selected)
    for entry_index, alpha in zip(selected, planes):
        slots.extend(
            EmbedSlot(entry_index, pixel) for pixel in kernels.eligible_indices(alpha)
        )
    return slots


def capacity(ico: IcoFile, options: EmbedOptions = EmbedOptions()) -> CapacityReport:
    selected = select_entries(ico, options)
    images, planes = _decoded_planes(ico, selected)
    per_entry = []
    total_bits = 0
    for entry_index, image, alpha in zip(selected, images, planes):
        eligible = kernels.count_eligible(alpha)
        total_bits += eligible
        per_entry.append(
            EntryCapacity(
                entry_index=entry_index,
                width=image.width,
                height=image.height,
                eligible_pixels=eligible,
                eligible_fraction=eligible / (image.width * image.height),
            )
        )
    gross = total_bits // 8
    return CapacityReport(
        per_entry=per_entry,
        total_eligible_bits=total_bits,
        gross_capacity_bytes=gross,
        net_capacity_bytes=max(0, gross - OVERHEAD),
    )


def embed(
    ico: IcoFile, payload: bytes, options: EmbedOptions = EmbedOptions()
) -> IcoFile:
    """Return a new IcoFile carrying the framed payload in its alpha LSBs.

    Raises PayloadTooLarge when the framed bit-length exceeds the slot count
    of the selection. Entries that receive no bits are carried over with
    byte-identical frames; touched entries are re-encoded in their original
    frame format (a format switch would be a loud forensic signal).
    """
    frame = frame_encode(payload)
    needed_bits = 8 * len(frame)

    selected = select_entries(ico, options)
    images, planes = _decoded_planes(ico, selected)
    available = sum(kernels.count_eligible(alpha) for alpha in planes)
    if needed_bits > available:
        raise PayloadTooLarge(
            f"Payload too large for this image: framed payload needs "
            f"{needed_bits} bits, selection holds {available}"
        )

    new_entries = list(ico.entries)
    cursor = 0
    for entry_index, image, alpha in zip(selected, images, planes):
        if cursor >= needed_bits:
            break
        written = kernels.write_lsbs(alpha, frame, cursor, needed_bits - cursor)
        cursor += written
        if written == 0:
            continue
        image.set_alpha_plane(alpha)
        entry = ico.entries[entry_index]
        new_entries[entry_index] = replace(
            entry,
            frame_bytes=encode_frame(image, entry.frame_format),
            bit_count=32,
            color_count=0,
        )
    return IcoFile(entries=new_entries, trailing_bytes=ico.trailing_bytes)


def extract(ico: IcoFile, options: EmbedOptions = EmbedOptions()) -> bytes:
    """Harvest slot LSBs in channel order and decode the payload envelope.

    The slot set is identical in cover and stego images (writes never change
    eligibility), so extraction is the exact inverse of embed. Raises the
    framing errors: BadMagic on a clean carrier, IntegrityFailure or
    InflateError on a damaged one.
    """
    selected = select_entries(ico, options)
    _, planes = _decoded_planes(ico, selected)
    total_bits = sum(kernels.count_eligible(alpha) for alpha in planes)
    harvest_bits = 8 * (total_bits // 8)
    out = bytearray(total_bits // 8)
    cursor = 0
    for alpha in planes:
        if cursor >= harvest_bits:
            break
        cursor += kernels.read_lsbs(alpha, out, cursor, harvest_bits - cursor)
    return frame_decode(bytes(out))
