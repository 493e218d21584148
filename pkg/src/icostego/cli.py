"""Command-line front end.

Exit codes are a stable scripting contract: 0 success, 1 operational failure
(payload too large, no stego frame, detection hits, sanitizer could not be
verified), 2 usage error, 3 I/O error. Extraction writes payload bytes to a
file or stdout and never evaluates, interprets or spawns them.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from icostego import __version__
from icostego.analysis import DetectionReport, compare_to_cover, detect
from icostego.container import IcoFile, parse_ico, serialize_ico
from icostego.demo import write_demo_site
from icostego.engine import (
    EmbedOptions,
    EntrySelection,
    capacity,
    embed,
    extract,
    select_entries,
)
from icostego.errors import BadMagic, IcoStegoError
from icostego.framing import FLAG_COMPRESSED, frame_encode
from icostego.kernels import count_eligible
from icostego.sanitize import SanitizeMode, SanitizeOptions, sanitize, verify_neutralized

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _entry_selection(value: str) -> EntrySelection:
    if value in ("all", "largest"):
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"--entry takes an index, 'all' or 'largest', not {value!r}"
        ) from None


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _load_ico(path: str) -> IcoFile:
    return parse_ico(_read_bytes(path))


def cmd_embed(args: argparse.Namespace) -> int:
    cover = _load_ico(args.cover)
    payload = _read_bytes(args.payload)
    options = EmbedOptions(entry_selection=args.entry)

    stego = embed(cover, payload, options)
    _write_bytes(args.out, serialize_ico(stego))

    frame = frame_encode(payload)
    report = capacity(cover, options)
    touched = []
    bits_left = 8 * len(frame)
    for entry_cap in report.per_entry:
        if bits_left <= 0:
            break
        if entry_cap.eligible_pixels > 0:
            touched.append(entry_cap.entry_index)
            bits_left -= entry_cap.eligible_pixels
    compressed = bool(frame[3] & FLAG_COMPRESSED)
    print(
        f"embedded {len(payload)} payload bytes ({8 * len(frame)} framed bits, "
        f"compression {'on' if compressed else 'off'}) into "
        f"entry {','.join(map(str, touched))}; "
        f"{report.total_eligible_bits - 8 * len(frame)} slack bits remain"
    )
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    ico = _load_ico(args.stego)
    try:
        payload = extract(ico, EmbedOptions(entry_selection=args.entry))
    except BadMagic:
        print("no stego frame found", file=sys.stderr)
        return EXIT_FAILURE
    _write_bytes(args.out, payload)
    if args.out != "-":
        print(f"wrote {len(payload)} payload bytes to {args.out}")
    return EXIT_OK


def cmd_capacity(args: argparse.Namespace) -> int:
    report = capacity(_load_ico(args.path), EmbedOptions(entry_selection=args.entry))
    if args.json:
        print(json.dumps(report.to_json_dict()))
        return EXIT_OK
    for e in report.per_entry:
        print(
            f"entry {e.entry_index}: {e.width}x{e.height}, "
            f"{e.eligible_pixels} eligible pixels "
            f"({100 * e.eligible_fraction:.1f}%)"
        )
    print(
        f"total: {report.total_eligible_bits} bits, gross "
        f"{report.gross_capacity_bytes} B, net {report.net_capacity_bytes} B"
    )
    return EXIT_OK


def _detect_one(path: Path, cover_path: str | None, as_json: bool) -> DetectionReport:
    ico = parse_ico(path.read_bytes())
    cover = _load_ico(cover_path) if cover_path else None
    report = detect(ico, cover=cover)
    if as_json:
        record = {"path": str(path), **report.to_json_dict()}
        if cover is not None:
            record["cover_diff"] = compare_to_cover(ico, cover).to_json_dict()
        print(json.dumps(record))
    else:
        print(f"{path}: {report.verdict}")
    return report


def cmd_detect(args: argparse.Namespace) -> int:
    target = Path(args.path)
    if target.is_dir():
        if args.cover:
            print("--cover applies to a single file, not a directory", file=sys.stderr)
            return EXIT_USAGE
        paths = sorted(target.rglob("*.ico"))
    else:
        paths = [target]

    any_flagged = False
    for path in paths:
        try:
            report = _detect_one(path, args.cover, args.json)
        except IcoStegoError as exc:
            any_flagged = True
            if args.json:
                print(json.dumps({"path": str(path), "error": str(exc)}))
            else:
                print(f"{path}: error: {exc}")
            continue
        if report.verdict != "clean":
            any_flagged = True
    return EXIT_FAILURE if any_flagged else EXIT_OK


def cmd_sanitize(args: argparse.Namespace) -> int:
    ico = _load_ico(args.input)
    options = SanitizeOptions(mode=SanitizeMode(args.mode), rng_seed=args.seed)
    cleaned = sanitize(ico, options)
    _write_bytes(args.out, serialize_ico(cleaned))
    check = verify_neutralized(cleaned)
    if not check:
        print(f"sanitized file FAILED verification: {check.reason}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"sanitized ({args.mode}); no payload recoverable from the output")
    return EXIT_OK


def cmd_gen_demo(args: argparse.Namespace) -> int:
    stego_bytes = _read_bytes(args.stego)
    manifest = write_demo_site(
        stego_bytes,
        Path(args.out_dir),
        EmbedOptions(entry_selection=args.entry),
        bundle_path=Path(args.bundle) if args.bundle else None,
    )
    print(
        f"demo site written to {args.out_dir} "
        f"(payload sha256 {manifest['payload_sha256'][:16]}...); "
        f"serve it same-origin, e.g.: python -m http.server -d {args.out_dir}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icostego",
        description=(
            "Embed, extract, measure, detect and destroy alpha-LSB payloads "
            "in ICO favicons."
        ),
    )
    parser.add_argument("--version", action="version", version=f"icostego {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_entry_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--entry",
            type=_entry_selection,
            default="largest",
            metavar="INDEX|all|largest",
            help="carrier entry selection (default: largest)",
        )

    p = sub.add_parser("embed", help="hide a payload in a cover ICO")
    p.add_argument("cover", help="cover ICO path")
    p.add_argument("payload", help="payload path ('-' for stdin)")
    p.add_argument("--out", required=True, help="stego ICO output path")
    add_entry_flag(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a payload (written, never executed)")
    p.add_argument("stego", help="stego ICO path")
    p.add_argument("--out", required=True, help="payload output path ('-' for stdout)")
    add_entry_flag(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("capacity", help="report embeddable-bit capacity")
    p.add_argument("path", help="ICO path")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    add_entry_flag(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("detect", help="scan a file or directory for hidden payloads")
    p.add_argument("path", help="ICO path or directory (scanned recursively)")
    p.add_argument("--cover", help="known original for cover comparison")
    p.add_argument("--json", action="store_true", help="one JSON record per file")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sanitize", help="destroy any LSB payload, preserving visuals")
    p.add_argument("input", help="ICO path")
    p.add_argument("--out", required=True, help="sanitized output path")
    p.add_argument(
        "--mode",
        choices=[m.value for m in SanitizeMode],
        default=SanitizeMode.BOTH.value,
    )
    p.add_argument("--seed", type=int, help="RNG seed for reproducible runs")
    p.set_defaults(func=cmd_sanitize)

    p = sub.add_parser("gen-demo", help="write a static browser demo site")
    p.add_argument("stego", help="stego ICO to ship as favicon.ico")
    p.add_argument("out_dir", help="output directory")
    p.add_argument("--bundle", help="use this extractor bundle instead of the vendored one")
    add_entry_flag(p)
    p.set_defaults(func=cmd_gen_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IcoStegoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except IndexError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())
