"""Lossless decoding and re-encoding of ICO frames as RGBA pixel grids.

PNG frames go through Pillow and come back as 8-bit RGBA regardless of the
source color type (palette, grayscale and 16-bit inputs are expanded or
narrowed to RGBA8). DIB frames are the ICO-specific bitmap layout: a
BITMAPINFOHEADER whose height field is doubled to cover the XOR (color)
image plus a 1-bpp AND mask, 32-bpp BGRA rows stored bottom-up. At 32 bpp
the alpha channel supersedes the AND mask, so the mask is ignored on read
and written as all zeros.

Re-encoded PNG streams are not byte-identical to their source (filter and
compression choices differ); only pixel exactness is promised. DIB at 32 bpp
is raw and round-trips exactly by construction.
"""

from __future__ import annotations

import array
import io
import struct
import warnings
from dataclasses import dataclass

from PIL import Image

from icostego.container import FrameFormat, IcoEntry
from icostego.errors import (
    CorruptFrame,
    DimensionMismatchWarning,
    UnsupportedDepth,
    ZeroDimension,
)

DIB_HEADER_LEN = 40
BI_RGB = 0


@dataclass
class RgbaImage:
    """Top-down row-major 8-bit RGBA pixel grid.

    `pixels` holds 4 bytes per pixel (R, G, B, A); pixel index 0 is the
    top-left corner. The alpha byte is the covert medium: 0 is fully
    transparent, 255 fully opaque.
    """

    width: int
    height: int
    pixels: bytearray

    def __post_init__(self) -> None:
        if len(self.pixels) != 4 * self.width * self.height:
            raise ValueError(
                f"pixel buffer is {len(self.pixels)} bytes, expected "
                f"{4 * self.width * self.height}"
            )

    @classmethod
    def filled(cls, width: int, height: int, rgba: tuple[int, int, int, int]) -> "RgbaImage":
        return cls(width, height, bytearray(bytes(rgba) * (width * height)))

    def alpha_plane(self) -> bytearray:
        """One byte per pixel, row-major."""
        return self.pixels[3::4]

    def set_alpha_plane(self, alpha: bytes | bytearray) -> None:
        self.pixels[3::4] = alpha

    def copy(self) -> "RgbaImage":
        return RgbaImage(self.width, self.height, bytearray(self.pixels))


def decode_frame(entry: IcoEntry) -> RgbaImage:
    """Decode an ICO frame to RGBA8.

    Raises CorruptFrame or UnsupportedDepth. When the decoded size disagrees
    with the directory entry, the decoded size wins and a
    DimensionMismatchWarning is emitted (stale directory dimensions are
    common in real-world files).
    """
    if entry.frame_format is FrameFormat.PNG:
        image = _decode_png(entry.frame_bytes)
    else:
        image = _decode_dib(entry.frame_bytes)
    if (image.width, image.height) != (entry.width_px, entry.height_px):
        warnings.warn(
            f"directory says {entry.width_px}x{entry.height_px}, frame decodes "
            f"to {image.width}x{image.height}; trusting the frame",
            DimensionMismatchWarning,
            stacklevel=2,
        )
    return image


def encode_frame(image: RgbaImage, frame_format: FrameFormat) -> bytes:
    """Encode RGBA8 pixels as a PNG or DIB frame blob.

    decode/encode round-trips every image exactly in both formats.
    """
    if image.width == 0 or image.height == 0:
        raise ZeroDimension(f"cannot encode a {image.width}x{image.height} frame")
    if frame_format is FrameFormat.PNG:
        return _encode_png(image)
    return _encode_dib(image)


# --- PNG path (Pillow-backed) ----------------------------------------------

def _decode_png(blob: bytes) -> RgbaImage:
    try:
        im = Image.open(io.BytesIO(blob))
        im.load()
    except Exception as exc:
        raise CorruptFrame(f"PNG decode failed: {exc}") from None
    if im.mode in ("I", "I;16", "I;16L", "I;16B", "I;16N"):
        # Pillow's direct I->RGBA conversion clamps instead of narrowing;
        # take the high byte explicitly. Mode I is native int32, row-major.
        wide = im.convert("I")
        samples = array.array("i")
        samples.frombytes(wide.tobytes())
        im = Image.frombytes(
            "L", wide.size, bytes((v >> 8) & 0xFF for v in samples)
        )
    if im.mode != "RGBA":
        im = im.convert("RGBA")
    return RgbaImage(im.width, im.height, bytearray(im.tobytes()))


def _encode_png(image: RgbaImage) -> bytes:
    im = Image.frombytes("RGBA", (image.width, image.height), bytes(image.pixels))
    buf = io.BytesIO()
    im.save(buf, format="PNG")
    return buf.getvalue()


# --- DIB path ---------------------------------------------------------------

def _mask_stride(width: int) -> int:
    # 1 bpp, rows padded to a 32-bit boundary
    return ((width + 31) // 32) * 4


def _decode_dib(blob: bytes) -> RgbaImage:
    if len(blob) < DIB_HEADER_LEN:
        raise CorruptFrame(f"DIB header needs {DIB_HEADER_LEN} bytes, got {len(blob)}")
    (
        header_size,
        width,
        doubled_height,
        _planes,
        bit_count,
        compression,
        *_rest,
    ) = struct.unpack_from("<IiiHHIIiiII", blob, 0)
    if header_size != DIB_HEADER_LEN:
        raise CorruptFrame(f"unexpected BITMAPINFOHEADER size {header_size}")
    if bit_count != 32:
        raise UnsupportedDepth(f"{bit_count} bpp DIB frames are not supported")
    if compression != BI_RGB:
        raise CorruptFrame(f"compressed DIB (biCompression={compression})")
    if width <= 0 or doubled_height <= 0 or doubled_height % 2:
        raise CorruptFrame(
            f"bad DIB geometry: width={width}, doubled height={doubled_height}"
        )
    height = doubled_height // 2
    row_len = 4 * width
    xor_end = DIB_HEADER_LEN + row_len * height
    if len(blob) < xor_end:
        raise CorruptFrame(
            f"XOR image needs {xor_end} bytes, frame has {len(blob)}"
        )

    # rows are stored bottom-up; flip to top-down while copying
    pixels = bytearray(row_len * height)
    for y in range(height):
        src = DIB_HEADER_LEN + (height - 1 - y) * row_len
        pixels[y * row_len : (y + 1) * row_len] = blob[src : src + row_len]
    # BGRA -> RGBA channel swap
    pixels[0::4], pixels[2::4] = pixels[2::4], pixels[0::4]
    # AND mask (if present) is ignored: alpha supersedes it at 32 bpp
    return RgbaImage(width, height, pixels)


def _encode_dib(image: RgbaImage) -> bytes:
    w, h = image.width, image.height
    row_len = 4 * w
    mask_len = _mask_stride(w) * h
    header = struct.pack(
        "<IiiHHIIiiII",
        DIB_HEADER_LEN,
        w,
        2 * h,
        1,
        32,
        BI_RGB,
        row_len * h + mask_len,
        0,
        0,
        0,
        0,
    )
    bgra = bytearray(image.pixels)
    bgra[0::4], bgra[2::4] = bgra[2::4], bgra[0::4]
    rows = bytearray(row_len * h)
    for y in range(h):
        src = (h - 1 - y) * row_len
        rows[y * row_len : (y + 1) * row_len] = bgra[src : src + row_len]
    return header + bytes(rows) + b"\x00" * mask_len
