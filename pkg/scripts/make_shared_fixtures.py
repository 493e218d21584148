#!/usr/bin/env python3
"""Generate the cross-component equivalence fixtures for the browser extractor.

Each record pairs a stego ICO produced by the toolkit with the payload bytes
that `icostego extract` recovers from it (written through the real CLI), the
payload's SHA-256, and the entry-selection mode. The frontend test suite
re-extracts every fixture in TypeScript and must produce identical bytes.

Also writes a complete demo site (gen-demo output) for the manifest-gating
tests. Deterministic: fixed seeds.

Usage: python scripts/make_shared_fixtures.py [--out frontend/tests/fixtures]
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import shutil
from pathlib import Path

from icostego.cli import main as cli_main
from icostego.codec import RgbaImage, encode_frame
from icostego.container import FrameFormat, IcoEntry, IcoFile, serialize_ico

DEMO_PAYLOAD = b"console.log('Success from the ICO file!')"


def glow_icon(size: int) -> RgbaImage:
    import math

    image = RgbaImage.filled(size, size, (40, 90, 200, 0))
    center = (size - 1) / 2
    for y in range(size):
        for x in range(size):
            r = math.hypot(x - center, y - center)
            if r <= size * 0.3:
                alpha = 255
            elif r <= size * 0.48:
                alpha = max(0, min(255, int(255 * (1 - (r - size * 0.3) / (size * 0.18)))))
            else:
                alpha = 0
            image.pixels[4 * (y * size + x) + 3] = alpha
    return image


def noisy_icon(size: int, seed: int) -> RgbaImage:
    rng = random.Random(seed)
    image = RgbaImage(size, size, bytearray(rng.randbytes(4 * size * size)))
    return image


def build(entries: list[RgbaImage]) -> bytes:
    return serialize_ico(
        IcoFile(
            [
                IcoEntry(img.width, img.height, encode_frame(img, FrameFormat.PNG))
                for img in entries
            ]
        )
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="frontend/tests/fixtures", type=Path)
    args = parser.parse_args()
    out: Path = args.out
    if out.exists():
        shutil.rmtree(out)
    out.mkdir(parents=True)

    rng = random.Random(0x5EC0)
    cases = [
        # (name, cover entries, payload, entry flag)
        ("stored_payload", [glow_icon(64)], rng.randbytes(200), "largest"),
        ("compressed_payload", [RgbaImage.filled(64, 64, (9, 9, 9, 255))],
         b"function tick(i){ console.log('tick ' + i); }\n" * 16, "largest"),
        ("largest_not_first", [RgbaImage.filled(16, 16, (1, 1, 1, 255)),
                               RgbaImage.filled(48, 48, (2, 2, 2, 255))],
         rng.randbytes(100), "largest"),
        ("spanning_all_entries", [noisy_icon(24, 7), noisy_icon(40, 8)],
         rng.randbytes(120), "all"),
        ("demo_message", [glow_icon(64)], DEMO_PAYLOAD, "largest"),
        ("binary_payload", [RgbaImage.filled(64, 64, (0, 0, 0, 255))],
         bytes(range(256)) * 2 + b"\x00\xff", "largest"),
    ]

    records = []
    for name, images, payload, entry_flag in cases:
        cover_path = out / f"{name}_cover.ico"
        cover_path.write_bytes(build(images))
        payload_path = out / f"{name}_payload_in.bin"
        payload_path.write_bytes(payload)
        stego_path = out / f"{name}.ico"
        extracted_path = out / f"{name}_payload.bin"
        assert cli_main([
            "embed", str(cover_path), str(payload_path),
            "--out", str(stego_path), "--entry", entry_flag,
        ]) == 0
        assert cli_main([
            "extract", str(stego_path), "--out", str(extracted_path),
            "--entry", entry_flag,
        ]) == 0
        extracted = extracted_path.read_bytes()
        assert extracted == payload
        payload_path.unlink()
        records.append(
            {
                "name": name,
                "stego": f"{name}.ico",
                "expected_payload": f"{name}_payload.bin",
                "entry_mode": entry_flag,
                "sha256": hashlib.sha256(extracted).hexdigest(),
                "payload_is_text": _is_utf8(extracted),
            }
        )

    # clean icon for the no-frame path
    clean_path = out / "clean.ico"
    clean_path.write_bytes(build([glow_icon(32)]))
    records.append({"name": "clean", "stego": "clean.ico", "expected_payload": None,
                    "entry_mode": "largest", "sha256": None, "payload_is_text": False})

    # full demo site for the manifest-gating tests
    demo_stego = out / "demo_message.ico"
    assert cli_main(["gen-demo", str(demo_stego), str(out / "demo_site")]) == 0

    (out / "records.json").write_text(json.dumps(records, indent=2) + "\n")
    print(f"wrote {len(records)} equivalence fixtures under {out}")


def _is_utf8(data: bytes) -> bool:
    try:
        data.decode("utf-8")
        return True
    except UnicodeDecodeError:
        return False


if __name__ == "__main__":
    main()
