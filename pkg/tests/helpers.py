"""Cover-construction helpers shared by the test modules.

These build in-memory ICO files through the package's own codec; the
parsing/decoding oracles live in tests/fixtures (generated independently by
scripts/make_fixtures.py), not here.
"""

from __future__ import annotations

import random

from icostego.codec import RgbaImage, encode_frame
from icostego.container import FrameFormat, IcoEntry, IcoFile


def image_with_alpha(
    width: int, height: int, alpha: bytes, rgb_seed: int | None = None
) -> RgbaImage:
    """RGBA image with the given alpha plane; RGB is seeded noise (or a flat
    mid-gray when rgb_seed is None)."""
    if rgb_seed is None:
        rgb = b"\x80\x81\x82" * (width * height)
    else:
        rgb = random.Random(rgb_seed).randbytes(3 * width * height)
    pixels = bytearray(4 * width * height)
    pixels[0::4] = rgb[0::3]
    pixels[1::4] = rgb[1::3]
    pixels[2::4] = rgb[2::3]
    pixels[3::4] = alpha
    return RgbaImage(width, height, pixels)


def cover_from_images(
    images: list[RgbaImage], formats: list[FrameFormat] | None = None
) -> IcoFile:
    formats = formats or [FrameFormat.PNG] * len(images)
    entries = [
        IcoEntry(
            width_px=img.width,
            height_px=img.height,
            frame_bytes=encode_frame(img, fmt),
        )
        for img, fmt in zip(images, formats)
    ]
    return IcoFile(entries=entries)


def opaque_cover(
    width: int, height: int, fmt: FrameFormat = FrameFormat.PNG, alpha: int = 255
) -> IcoFile:
    img = image_with_alpha(width, height, bytes([alpha]) * (width * height))
    return cover_from_images([img], [fmt])
