"""Self-describing payload envelope written into the covert channel.

Wire layout (normative, shared bit-exactly with the browser extractor):

    magic   2 bytes  0x49 0x41 ("IA")
    version 1 byte   0x01
    flags   1 byte   bit0 = body is raw-DEFLATE compressed, rest reserved 0
    length  u32 LE   stored body length
    body    `length` bytes
    crc32   u32 LE   IEEE CRC32 over the ORIGINAL (uncompressed) payload

Total stored size is 12 + length. Compression is adaptive: the body is the
deflated payload only when that is strictly smaller, so framing never
inflates the payload beyond the 12-byte overhead. The CRC covers the
original bytes so corruption anywhere on the decode path, including the
inflate stage, is detected.
"""

from __future__ import annotations

import struct
import zlib
from typing import NamedTuple

from icostego.errors import (
    BadMagic,
    InflateError,
    IntegrityFailure,
    TruncatedBody,
    UnsupportedVersion,
)

MAGIC = b"IA"
VERSION = 1
FLAG_COMPRESSED = 0x01

PREFIX_LEN = 8  # magic + version + flags + length
OVERHEAD = 12  # prefix + trailing crc32


class FrameHeader(NamedTuple):
    version: int
    flags: int
    body_length: int


def deflate_raw(data: bytes) -> bytes:
    comp = zlib.compressobj(9, zlib.DEFLATED, -zlib.MAX_WBITS)
    return comp.compress(data) + comp.flush()


def inflate_raw(data: bytes) -> bytes:
    decomp = zlib.decompressobj(-zlib.MAX_WBITS)
    try:
        out = decomp.decompress(data)
        out += decomp.flush()
    except zlib.error as exc:
        raise InflateError(f"raw DEFLATE stream rejected: {exc}") from None
    if not decomp.eof:
        raise InflateError("raw DEFLATE stream ended prematurely")
    return out


def frame_encode(payload: bytes) -> bytes:
    """Wrap a payload in the envelope, compressing only when it helps."""
    if len(payload) >= 2**32:
        raise ValueError("payload length must fit in u32")
    compressed = deflate_raw(payload)
    if len(compressed) < len(payload):
        body, flags = compressed, FLAG_COMPRESSED
    else:
        body, flags = payload, 0
    return (
        MAGIC
        + bytes((VERSION, flags))
        + struct.pack("<I", len(body))
        + body
        + struct.pack("<I", zlib.crc32(payload))
    )


def frame_decode(stream: bytes) -> bytes:
    """Recover the original payload from a harvested byte stream.

    Raises BadMagic when no envelope is present (clean carrier or destroyed
    channel), UnsupportedVersion, TruncatedBody when the declared length
    exceeds the stream, InflateError, or IntegrityFailure on CRC mismatch.
    """
    if stream[:2] != MAGIC:
        raise BadMagic("no payload frame magic at stream start")
    if len(stream) < OVERHEAD:
        raise TruncatedBody(
            f"stream holds {len(stream)} bytes, an empty frame needs {OVERHEAD}"
        )
    version, flags = stream[2], stream[3]
    if version != VERSION:
        raise UnsupportedVersion(f"frame version {version}, decoder knows {VERSION}")
    (body_length,) = struct.unpack_from("<I", stream, 4)
    total = OVERHEAD + body_length
    if len(stream) < total:
        raise TruncatedBody(
            f"declared body of {body_length} bytes exceeds the stream"
        )
    body = stream[PREFIX_LEN : PREFIX_LEN + body_length]
    (stored_crc,) = struct.unpack_from("<I", stream, PREFIX_LEN + body_length)
    payload = inflate_raw(body) if flags & FLAG_COMPRESSED else body
    if zlib.crc32(payload) != stored_crc:
        raise IntegrityFailure("payload CRC32 mismatch")
    return payload


def peek_header(prefix: bytes) -> FrameHeader | None:
    """Parse the 8-byte frame prefix, or None when the magic is absent.

    Used by the scanner; performs no validation beyond the magic check.
    """
    if len(prefix) < PREFIX_LEN or prefix[:2] != MAGIC:
        return None
    (body_length,) = struct.unpack_from("<I", prefix, 4)
    return FrameHeader(version=prefix[2], flags=prefix[3], body_length=body_length)
