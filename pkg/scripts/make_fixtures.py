#!/usr/bin/env python3
"""Generate the binary test fixtures and their frozen expectations.

Implemented with Pillow and struct only -- never the package under test --
so every recorded value (directory fields, offsets, eligible-pixel counts,
hashes) is an independent oracle. Deterministic output: fixed seed, no
timestamps; regenerating must reproduce identical bytes.

Usage: python scripts/make_fixtures.py [--out tests/fixtures]
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import random
import shutil
import struct
from pathlib import Path

from PIL import Image, ImageDraw

PNG_SIG = b"\x89PNG\r\n\x1a\n"

REAL_ICONS = [
    ("real_python_idle.ico",
     "/mnt/sandboxing/model_tools_env/v1/python/install/lib/python3.11/idlelib/Icons/idle.ico"),
    ("real_marimo_favicon.ico",
     "/usr/local/lib/python3.10/dist-packages/marimo/_static/favicon.ico"),
]
REAL_UNSUPPORTED = [
    ("real_clang_bugcatcher_4bpp.ico", "/usr/share/clang/scan-view-14/share/bugcatcher.ico"),
]


def png_blob(im: Image.Image) -> bytes:
    buf = io.BytesIO()
    im.save(buf, format="PNG")
    return buf.getvalue()


def dib_blob(im: Image.Image) -> bytes:
    """32-bpp ICO-style DIB: doubled-height header, bottom-up BGRA rows,
    all-zero AND mask padded to 32-bit row boundaries."""
    w, h = im.size
    rgba = im.tobytes()
    rows = []
    for y in reversed(range(h)):
        row = bytearray()
        for x in range(w):
            o = 4 * (y * w + x)
            r, g, b, a = rgba[o : o + 4]
            row += bytes((b, g, r, a))
        rows.append(bytes(row))
    mask_stride = ((w + 31) // 32) * 4
    header = struct.pack(
        "<IiiHHIIiiII", 40, w, 2 * h, 1, 32, 0, 4 * w * h + mask_stride * h, 0, 0, 0, 0
    )
    return header + b"".join(rows) + b"\x00" * (mask_stride * h)


def build_ico(frames: list[tuple[Image.Image, str]]) -> bytes:
    """Canonical ICO from (image, 'png'|'dib') pairs, packed in order."""
    blobs = [png_blob(im) if kind == "png" else dib_blob(im) for im, kind in frames]
    count = len(frames)
    out = bytearray(struct.pack("<HHH", 0, 1, count))
    offset = 6 + 16 * count
    for (im, _), blob in zip(frames, blobs):
        w, h = im.size
        out += struct.pack(
            "<BBBBHHII",
            0 if w == 256 else w,
            0 if h == 256 else h,
            0, 0, 1, 32, len(blob), offset,
        )
        offset += len(blob)
    for blob in blobs:
        out += blob
    return bytes(out)


def eligible_count(im: Image.Image) -> int:
    return sum(1 for a in im.tobytes()[3::4] if a >= 2)


def describe(path: Path, per_entry_eligible: list[int] | None = None) -> dict:
    """Frozen container facts, read back with struct (not the package)."""
    data = path.read_bytes()
    count = struct.unpack_from("<H", data, 4)[0]
    entries = []
    end = 6 + 16 * count
    canonical = True
    expected_offset = end
    for i in range(count):
        w, h, _cc, _res, _planes, _bpp, size, offset = struct.unpack_from(
            "<BBBBHHII", data, 6 + 16 * i
        )
        if offset != expected_offset:
            canonical = False
        expected_offset = offset + size
        entries.append(
            {
                "width": w or 256,
                "height": h or 256,
                "format": "png" if data[offset : offset + 8] == PNG_SIG else "dib",
                "size": size,
                "offset": offset,
            }
        )
        end = max(end, offset + size)
    if per_entry_eligible is not None:
        for entry, eligible in zip(entries, per_entry_eligible):
            entry["eligible"] = eligible
    return {
        "sha256": hashlib.sha256(data).hexdigest(),
        "file_len": len(data),
        "canonical": canonical and end == len(data),
        "trailing_len": len(data) - end,
        "entries": entries,
    }


# --- deterministic icon art --------------------------------------------------

def _supersampled(size: int, draw_fn, scale: int = 4) -> Image.Image:
    """Draw at scale x then LANCZOS-downscale: anti-aliased alpha edges like
    real favicon exports."""
    big = Image.new("RGBA", (size * scale, size * scale), (0, 0, 0, 0))
    draw_fn(ImageDraw.Draw(big), size * scale)
    return big.resize((size, size), Image.LANCZOS)


def icon_circle(size, color):
    return _supersampled(size, lambda d, s: d.ellipse([s * 0.06, s * 0.06, s * 0.94, s * 0.94], fill=color))


def icon_rounded_rect(size, color):
    return _supersampled(
        size, lambda d, s: d.rounded_rectangle([s * 0.08, s * 0.08, s * 0.92, s * 0.92], radius=s * 0.2, fill=color)
    )


def icon_ring(size, color):
    def draw(d, s):
        d.ellipse([s * 0.05, s * 0.05, s * 0.95, s * 0.95], outline=color, width=int(s * 0.16))
    return _supersampled(size, draw)


def icon_diamond(size, color):
    def draw(d, s):
        d.polygon([(s / 2, s * 0.04), (s * 0.96, s / 2), (s / 2, s * 0.96), (s * 0.04, s / 2)], fill=color)
    return _supersampled(size, draw)


def icon_triangle(size, color):
    def draw(d, s):
        d.polygon([(s / 2, s * 0.08), (s * 0.92, s * 0.9), (s * 0.08, s * 0.9)], fill=color)
    return _supersampled(size, draw)


def icon_star(size, color):
    def draw(d, s):
        pts = []
        cx = cy = s / 2
        for i in range(10):
            r = s * (0.46 if i % 2 == 0 else 0.2)
            ang = math.pi * i / 5 - math.pi / 2
            pts.append((cx + r * math.cos(ang), cy + r * math.sin(ang)))
        d.polygon(pts, fill=color)
    return _supersampled(size, draw)


def icon_two_dots(size, color):
    def draw(d, s):
        d.ellipse([s * 0.05, s * 0.25, s * 0.55, s * 0.75], fill=color)
        d.ellipse([s * 0.45, s * 0.25, s * 0.95, s * 0.75], fill=(color[2], color[0], color[1], 255))
    return _supersampled(size, draw)


def icon_solid_tile(size, color):
    """Fully opaque square logo, no transparency anywhere (common for old
    16x16 favicons)."""
    im = Image.new("RGBA", (size, size), color)
    d = ImageDraw.Draw(im)
    d.rectangle([size // 4, size // 4, 3 * size // 4, 3 * size // 4],
                fill=(255 - color[0], 255 - color[1], 255 - color[2], 255))
    return im


def icon_bars(size, color):
    def draw(d, s):
        for i in range(3):
            top = s * (0.12 + i * 0.3)
            d.rectangle([s * 0.1, top, s * 0.9, top + s * 0.18], fill=color)
    return _supersampled(size, draw)


def icon_crescent(size, color):
    def draw(d, s):
        d.ellipse([s * 0.08, s * 0.08, s * 0.92, s * 0.92], fill=color)
        d.ellipse([s * 0.3, s * 0.0, s * 1.1, s * 0.8], fill=(0, 0, 0, 0))
    return _supersampled(size, draw)


SHAPES = [
    icon_circle, icon_rounded_rect, icon_ring, icon_diamond, icon_triangle,
    icon_star, icon_two_dots, icon_solid_tile, icon_bars, icon_crescent,
]


def make_corpus(out_dir: Path, manifest: dict) -> None:
    corpus = out_dir / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20250810)
    sizes = [16, 32, 48, 64]
    for i, shape in enumerate(SHAPES):
        for variant in range(2):
            color = (rng.randrange(30, 226), rng.randrange(30, 226), rng.randrange(30, 226), 255)
            size = sizes[(i + variant) % len(sizes)]
            kind = "dib" if (i + variant) % 3 == 0 else "png"
            if i % 4 == 0 and variant == 1:
                frames = [(shape(s, color), kind) for s in (16, size)]
            else:
                frames = [(shape(size, color), kind)]
            name = f"synthetic_{shape.__name__[5:]}_{variant}_{size}.ico"
            path = corpus / name
            path.write_bytes(build_ico(frames))
            manifest[f"corpus/{name}"] = describe(path)
    for name, source in REAL_ICONS:
        target = corpus / name
        shutil.copyfile(source, target)
        manifest[f"corpus/{name}"] = describe(target)


def make_core_fixtures(out_dir: Path, manifest: dict) -> None:
    def emit(name: str, frames: list[tuple[Image.Image, str]]) -> None:
        path = out_dir / name
        path.write_bytes(build_ico(frames))
        manifest[name] = describe(path, [eligible_count(im) for im, _ in frames])

    opaque64 = Image.new("RGBA", (64, 64), (10, 20, 30, 255))
    emit("opaque_png_64.ico", [(opaque64, "png")])
    emit("opaque_dib_64.ico", [(opaque64, "dib")])
    emit("opaque_png_128.ico", [(Image.new("RGBA", (128, 128), (200, 60, 20, 255)), "png")])
    emit("transparent_png_8.ico", [(Image.new("RGBA", (8, 8), (50, 50, 50, 0)), "png")])

    emit("two_entry_png_32_64.ico",
         [(Image.new("RGBA", (32, 32), (1, 2, 3, 255)), "png"), (opaque64, "png")])
    emit("multi_32_48_64_opaque.ico",
         [(Image.new("RGBA", (s, s), (77, 88, 99, 255)), "png") for s in (32, 48, 64)])
    emit("mixed_dib16_png64.ico",
         [(Image.new("RGBA", (16, 16), (5, 6, 7, 255)), "dib"), (opaque64, "png")])

    # exactly 70% of 4096 pixels eligible: first 2867 row-major pixels opaque
    partial = Image.new("RGBA", (64, 64), (0, 0, 0, 0))
    px = partial.load()
    for i in range(2867):
        px[i % 64, i // 64] = (120, 140, 160, 255)
    emit("partial_70pct_64.ico", [(partial, "png")])

    # alphas clustered on a few even values: strongly pair-imbalanced histogram
    gradient = Image.new("RGBA", (64, 64), (0, 0, 0, 0))
    px = gradient.load()
    for y in range(64):
        for x in range(64):
            px[x, y] = (90, 90, 200, 200 + 2 * ((x + y) % 4))
    emit("even_alpha_64.ico", [(gradient, "png")])

    # demo cover: opaque core with a soft glow, many partially transparent pixels
    demo = Image.new("RGBA", (64, 64), (0, 0, 0, 0))
    px = demo.load()
    for y in range(64):
        for x in range(64):
            r = math.hypot(x - 31.5, y - 31.5)
            if r <= 20:
                alpha = 255
            elif r <= 31:
                alpha = max(0, min(255, int(255 * (1 - (r - 20) / 11))))
            else:
                alpha = 0
            px[x, y] = (240, 180, 40, alpha) if r <= 14 else (40, 90, 200, alpha)
    emit("demo_cover_64.ico", [(demo, "png")])

    # PIL's own ICO writer (independent layout + maskless DIB frames)
    pil_png = out_dir / "pil_png_64.ico"
    buf = io.BytesIO()
    opaque64.save(buf, format="ICO", sizes=[(64, 64)])
    pil_png.write_bytes(buf.getvalue())
    manifest["pil_png_64.ico"] = describe(pil_png, [4096])

    pil_dib = out_dir / "pil_maskless_dib_16.ico"
    buf = io.BytesIO()
    Image.new("RGBA", (16, 16), (9, 9, 9, 255)).save(
        buf, format="ICO", sizes=[(16, 16)], bitmap_format="bmp"
    )
    pil_dib.write_bytes(buf.getvalue())
    manifest["pil_maskless_dib_16.ico"] = describe(pil_dib, [256])

    for name, source in REAL_UNSUPPORTED:
        target = out_dir / name
        shutil.copyfile(source, target)
        manifest[name] = describe(target)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/fixtures", type=Path)
    args = parser.parse_args()
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)

    manifest: dict = {}
    make_core_fixtures(out_dir, manifest)
    make_corpus(out_dir, manifest)
    (out_dir / "fixtures_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    print(f"wrote {len(manifest)} fixtures under {out_dir}")


if __name__ == "__main__":
    main()
