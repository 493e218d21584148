"""Writer for the self-contained browser demo directory.

The output is a static site: the stego ICO copied verbatim as favicon.ico,
a demo page that uses it as the page icon, the extractor bundle, and a
manifest carrying the SHA-256 of the embedded payload so the page (and the
extraction tests) can verify what they recover. The payload is extracted
here only to compute that digest; it is never executed.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from icostego.container import parse_ico
from icostego.engine import EmbedOptions, extract, select_entries

MANIFEST_NAME = "manifest.json"
BUNDLE_NAME = "extractor.js"
PAGE_NAME = "index.html"
ICON_NAME = "favicon.ico"


def write_demo_site(
    stego_bytes: bytes,
    out_dir: Path,
    options: EmbedOptions = EmbedOptions(),
    bundle_path: Path | None = None,
) -> dict:
    """Populate out_dir with exactly {index.html, favicon.ico, extractor.js,
    manifest.json}; returns the manifest dict."""
    ico = parse_ico(stego_bytes)
    payload = extract(ico, options)
    entry_index = select_entries(ico, options)[0]
    entry = ico.entries[entry_index]

    manifest = {
        "version": 1,
        "payload_sha256": hashlib.sha256(payload).hexdigest(),
        "payload_bytes": len(payload),
        "entry_selection": (
            options.entry_selection
            if isinstance(options.entry_selection, str)
            else int(options.entry_selection)
        ),
        "source_entry": {
            "index": entry_index,
            "width": entry.width_px,
            "height": entry.height_px,
        },
    }

    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / ICON_NAME).write_bytes(stego_bytes)
    (out_dir / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2) + "\n")
    assets = resources.files("icostego") / "demo_assets"
    (out_dir / PAGE_NAME).write_text((assets / PAGE_NAME).read_text())
    if bundle_path is not None:
        (out_dir / BUNDLE_NAME).write_bytes(Path(bundle_path).read_bytes())
    else:
        (out_dir / BUNDLE_NAME).write_text((assets / BUNDLE_NAME).read_text())
    return manifest
