"""Bit-exact parsing and serialization of the ICO container.

Layout (all integers little-endian):

    offset 0: u16 reserved (= 0), u16 type (= 1 for icons), u16 count
    offset 6: count 16-byte directory entries:
              width byte (0 encodes 256), height byte (0 encodes 256),
              color_count, reserved (= 0), u16 planes, u16 bit_count,
              u32 size, u32 offset
    frame blobs at their declared offsets

Frames are either PNG streams (8-byte PNG signature) or DIB bitmaps.
Non-canonical input layouts (gaps, out-of-order frames) parse fine but are
re-serialized canonically: packed, in directory order, first offset right
after the directory table. Byte-for-byte round-trip is guaranteed only for
canonical files.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import Enum

from icostego.errors import (
    MalformedHeader,
    OversizeFrame,
    TooManyEntries,
    TruncatedFile,
    ZeroEntries,
)

HEADER_LEN = 6
DIR_ENTRY_LEN = 16
ICO_TYPE = 1

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


class FrameFormat(Enum):
    PNG = "png"
    DIB = "dib"


def classify_frame(frame_bytes: bytes) -> FrameFormat:
    """PNG iff the blob starts with the PNG signature, DIB otherwise."""
    if frame_bytes[: len(PNG_SIGNATURE)] == PNG_SIGNATURE:
        return FrameFormat.PNG
    return FrameFormat.DIB


@dataclass(frozen=True)
class IcoEntry:
    """One directory entry plus its frame blob.

    width_px/height_px are the logical 1..256 values (the stored byte uses 0
    to encode 256). color_count, planes and bit_count are carried verbatim
    from the directory; they are advisory in real-world files and the decoder
    never trusts them over the frame itself.
    """

    width_px: int
    height_px: int
    frame_bytes: bytes
    color_count: int = 0
    planes: int = 1
    bit_count: int = 32

    def __post_init__(self) -> None:
        if not 1 <= self.width_px <= 256 or not 1 <= self.height_px <= 256:
            raise ValueError("entry dimensions must be in 1..256")

    @property
    def frame_format(self) -> FrameFormat:
        return classify_frame(self.frame_bytes)


@dataclass
class IcoFile:
    """Parsed ICO container: directory entries in order plus any bytes that
    trailed the last referenced frame (some generators append data; dropping
    it would be a detectable change)."""

    entries: list[IcoEntry]
    trailing_bytes: bytes = b""


def _dim_byte(value: int) -> int:
    return 0 if value == 256 else value


def parse_ico(data: bytes) -> IcoFile:
    """Parse an ICO buffer, preserving directory order and metadata.

    Raises MalformedHeader, ZeroEntries or TruncatedFile; frame windows may
    not overlap the header or directory table.
    """
    if len(data) < HEADER_LEN:
        raise TruncatedFile(f"need at least {HEADER_LEN} bytes, got {len(data)}")
    reserved, ico_type, count = struct.unpack_from("<HHH", data, 0)
    if reserved != 0 or ico_type != ICO_TYPE:
        raise MalformedHeader(
            f"reserved={reserved}, type={ico_type} (expected 0 and {ICO_TYPE})"
        )
    if count == 0:
        raise ZeroEntries("directory declares no images")
    dir_end = HEADER_LEN + DIR_ENTRY_LEN * count
    if len(data) < dir_end:
        raise TruncatedFile(
            f"directory table needs {dir_end} bytes, file has {len(data)}"
        )

    entries = []
    frames_end = dir_end
    for i in range(count):
        base = HEADER_LEN + DIR_ENTRY_LEN * i
        w, h, color_count, _entry_reserved, planes, bit_count, size, offset = (
            struct.unpack_from("<BBBBHHII", data, base)
        )
        if offset < dir_end:
            raise MalformedHeader(
                f"entry {i}: frame offset {offset} overlaps the directory"
            )
        if offset + size > len(data):
            raise TruncatedFile(
                f"entry {i}: window {offset}+{size} exceeds file size {len(data)}"
            )
        entries.append(
            IcoEntry(
                width_px=w or 256,
                height_px=h or 256,
                frame_bytes=data[offset : offset + size],
                color_count=color_count,
                planes=planes,
                bit_count=bit_count,
            )
        )
        frames_end = max(frames_end, offset + size)

    return IcoFile(entries=entries, trailing_bytes=data[frames_end:])


def serialize_ico(ico: IcoFile) -> bytes:
    """Serialize canonically: header, directory, then frames packed in entry
    order with no gaps, followed by any trailing bytes."""
    count = len(ico.entries)
    if count > 0xFFFF:
        raise TooManyEntries(f"{count} entries exceed the u16 count field")

    out = bytearray()
    out += struct.pack("<HHH", 0, ICO_TYPE, count)
    offset = HEADER_LEN + DIR_ENTRY_LEN * count
    for i, entry in enumerate(ico.entries):
        size = len(entry.frame_bytes)
        if size > 0xFFFFFFFF or offset > 0xFFFFFFFF:
            raise OversizeFrame(f"entry {i}: size {size} at offset {offset}")
        out += struct.pack(
            "<BBBBHHII",
            _dim_byte(entry.width_px),
            _dim_byte(entry.height_px),
            entry.color_count,
            0,
            entry.planes,
            entry.bit_count,
            size,
            offset,
        )
        offset += size
    for entry in ico.entries:
        out += entry.frame_bytes
    out += ico.trailing_bytes
    return bytes(out)
