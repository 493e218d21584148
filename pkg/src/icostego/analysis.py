"""Statistical detection of alpha-LSB payloads.

Four independent signals, all restricted to eligible pixels (alpha >= 2) so
that icons dominated by transparent background do not dilute the statistics:

* Shannon entropy of the LSB stream (compressed payloads look like noise);
* the classic pair-of-values chi-square test over the alpha histogram
  (LSB embedding balances each (2k, 2k+1) bin pair, which natural alpha
  distributions almost never do -- a SMALL statistic, p near 1, is the
  stego-like signal);
* a scan for this toolkit's own frame magic in the harvested LSB stream;
* per-pixel comparison against a known cover, when one is available.

The verdict thresholds are calibration choices, configurable via
DetectorThresholds; they ship with defaults tuned on the bundled corpus of
unmodified favicons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from icostego import kernels
from icostego.codec import RgbaImage, decode_frame
from icostego.container import IcoFile
from icostego.errors import InsufficientSample, NoContributingPairs
from icostego.framing import MAGIC, OVERHEAD, PREFIX_LEN, VERSION, peek_header
from icostego.stats import binary_entropy, chi2_sf

MIN_SAMPLE = 64
DIFF_INDEX_CAP = 1024


@dataclass(frozen=True)
class DetectorThresholds:
    """Knobs for the heuristic verdict; defaults are corpus-calibrated."""

    entropy_min: float = 0.90
    chi_p_min: float = 0.05
    min_eligible_pixels: int = 256


DEFAULT_THRESHOLDS = DetectorThresholds()


class FrameScan(NamedTuple):
    entry_index: int
    magic_found: bool
    frame_plausible: bool
    declared_length: int | None


@dataclass(frozen=True)
class EntryAnalysis:
    """Statistics for one entry; entropy and chi-square fields are None when
    fewer than MIN_SAMPLE pixels are eligible (or the pair test is
    degenerate)."""

    entry_index: int
    eligible_pixels: int
    lsb_entropy_bits: float | None
    chi_square_stat: float | None
    chi_square_p: float | None
    magic_found: bool
    frame_plausible: bool

    def to_json_dict(self) -> dict:
        record = {
            "entry_index": self.entry_index,
            "eligible_pixels": self.eligible_pixels,
            "magic_found": self.magic_found,
            "frame_plausible": self.frame_plausible,
        }
        if self.lsb_entropy_bits is not None:
            record["lsb_entropy_bits"] = self.lsb_entropy_bits
        if self.chi_square_stat is not None:
            record["chi_square_stat"] = self.chi_square_stat
            record["chi_square_p"] = self.chi_square_p
        return record


@dataclass(frozen=True)
class DetectionReport:
    per_entry: list[EntryAnalysis]
    verdict: str  # "clean" | "suspicious" | "stego_frame_present"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "per_entry": [e.to_json_dict() for e in self.per_entry],
        }


@dataclass(frozen=True)
class CoverDiffReport:
    """Per-pixel classification of suspect vs cover.

    Buckets are disjoint per pixel with precedence RGB > alpha: any R,G,B
    change counts as rgb_diff, otherwise |delta alpha| = 1 is an LSB-scale
    change and >= 2 a larger one. diff_pixel_indices lists the first
    DIFF_INDEX_CAP differing pixels as (entry_index, pixel_index); the
    counts always cover everything.
    """

    dimensions_match: bool
    alpha_lsb_diff_count: int
    alpha_other_diff_count: int
    rgb_diff_count: int
    diff_pixel_indices: list[tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {
            "dimensions_match": self.dimensions_match,
            "alpha_lsb_diff_count": self.alpha_lsb_diff_count,
            "alpha_other_diff_count": self.alpha_other_diff_count,
            "rgb_diff_count": self.rgb_diff_count,
            "diff_pixel_indices": [list(p) for p in self.diff_pixel_indices],
        }


def lsb_entropy(image: RgbaImage) -> float:
    """Shannon entropy (bits) of the LSB stream over eligible pixels."""
    zeros, ones = kernels.lsb_counts(image.alpha_plane())
    total = zeros + ones
    if total < MIN_SAMPLE:
        raise InsufficientSample(
            f"{total} eligible pixels, entropy needs {MIN_SAMPLE}"
        )
    return binary_entropy(ones / total)


def chi_square_lsb(image: RgbaImage) -> tuple[float, float]:
    """Pair-of-values chi-square over the eligible alpha histogram.

    Returns (statistic, p_value) with dof = contributing pairs - 1; the
    p-value is the upper tail, so values near 1 mean the pairs are as
    balanced as fully randomized LSBs would make them.
    """
    alpha = image.alpha_plane()
    hist = kernels.alpha_histogram(alpha)
    eligible = len(alpha) - hist[0] - hist[1]
    if eligible < MIN_SAMPLE:
        raise InsufficientSample(
            f"{eligible} eligible pixels, chi-square needs {MIN_SAMPLE}"
        )
    stat = 0.0
    contributing = 0
    for k in range(1, 128):  # pair (0,1) is never eligible
        even, odd = hist[2 * k], hist[2 * k + 1]
        pair_total = even + odd
        if pair_total == 0:
            continue
        expected = pair_total / 2.0
        stat += (even - expected) ** 2 / expected
        contributing += 1
    if contributing < 2:
        raise NoContributingPairs(
            f"only {contributing} alpha pair(s) populated; pair test undefined"
        )
    return stat, chi2_sf(stat, contributing - 1)


def _harvest_prefix(planes: list[bytearray], max_bytes: int) -> tuple[bytes, int]:
    """First max_bytes of the concatenated LSB stream and the bit count
    actually available (may be smaller)."""
    out = bytearray(max_bytes)
    cursor = 0
    for alpha in planes:
        if cursor >= 8 * max_bytes:
            break
        cursor += kernels.read_lsbs(alpha, out, cursor, 8 * max_bytes - cursor)
    return bytes(out), cursor


def _scan_planes(planes: list[bytearray], entry_indices: list[int]) -> list[FrameScan]:
    counts = [kernels.count_eligible(alpha) for alpha in planes]
    results = []
    for i, entry_index in enumerate(entry_indices):
        onward = planes[i:]
        available_bits = sum(counts[i:])
        prefix, got_bits = _harvest_prefix(onward, PREFIX_LEN)
        magic_found = got_bits >= 16 and prefix[:2] == MAGIC
        plausible = False
        declared = None
        if magic_found and got_bits >= 8 * PREFIX_LEN:
            header = peek_header(prefix)
            assert header is not None
            declared = header.body_length
            plausible = (
                header.version == VERSION
                and 8 * (OVERHEAD + declared) <= available_bits
            )
        results.append(FrameScan(entry_index, magic_found, plausible, declared))
    return results


def scan_for_frame(ico: IcoFile) -> list[FrameScan]:
    """Check every entry as a potential frame start.

    The harvested stream continues across subsequent entries, matching the
    all-entries embedding mode, so a frame that begins in entry i is
    plausible when its declared length fits the slots from entry i onward.
    """
    planes = [decode_frame(e).alpha_plane() for e in ico.entries]
    return _scan_planes(planes, list(range(len(ico.entries))))


def compare_to_cover(suspect: IcoFile, original: IcoFile) -> CoverDiffReport:
    """Pelosi-style diff of a suspect file against its known cover."""
    suspect_images = [decode_frame(e) for e in suspect.entries]
    original_images = [decode_frame(e) for e in original.entries]
    dimensions_match = len(suspect_images) == len(original_images) and all(
        (s.width, s.height) == (o.width, o.height)
        for s, o in zip(suspect_images, original_images)
    )
    lsb = other = rgb = 0
    indices: list[tuple[int, int]] = []
    for entry_index, (s, o) in enumerate(zip(suspect_images, original_images)):
        if (s.width, s.height) != (o.width, o.height):
            continue
        cap_left = max(0, DIFF_INDEX_CAP - len(indices))
        d_lsb, d_other, d_rgb, pixel_indices = kernels.classify_diff(
            bytes(o.pixels), bytes(s.pixels), cap_left
        )
        lsb += d_lsb
        other += d_other
        rgb += d_rgb
        indices.extend((entry_index, p) for p in pixel_indices)
    return CoverDiffReport(
        dimensions_match=dimensions_match,
        alpha_lsb_diff_count=lsb,
        alpha_other_diff_count=other,
        rgb_diff_count=rgb,
        diff_pixel_indices=indices,
    )


def _entry_suspicious(e: EntryAnalysis, t: DetectorThresholds) -> bool:
    if e.lsb_entropy_bits is None or e.eligible_pixels < t.min_eligible_pixels:
        return False
    if e.lsb_entropy_bits < t.entropy_min:
        return False
    if e.chi_square_p is None:
        # degenerate histogram (single populated pair): the chi gate cannot
        # run, but near-maximal entropy already implies that pair is balanced
        return True
    return e.chi_square_p >= t.chi_p_min


def detect(
    ico: IcoFile,
    cover: IcoFile | None = None,
    thresholds: DetectorThresholds = DEFAULT_THRESHOLDS,
) -> DetectionReport:
    """Aggregate all signals into a per-file verdict.

    stego_frame_present when the magic scan hits with a plausible header;
    else suspicious when any sufficiently large entry has both near-maximal
    LSB entropy and a chi-square p-value consistent with randomized LSBs;
    else clean. A supplied cover upgrades clean to suspicious on any
    LSB-scale alpha difference.
    """
    images = [decode_frame(e) for e in ico.entries]
    planes = [img.alpha_plane() for img in images]
    scans = _scan_planes(planes, list(range(len(ico.entries))))

    per_entry = []
    for i, image in enumerate(images):
        eligible = kernels.count_eligible(planes[i])
        entropy = stat = p_value = None
        if eligible >= MIN_SAMPLE:
            entropy = lsb_entropy(image)
            try:
                stat, p_value = chi_square_lsb(image)
            except NoContributingPairs:
                pass
        per_entry.append(
            EntryAnalysis(
                entry_index=i,
                eligible_pixels=eligible,
                lsb_entropy_bits=entropy,
                chi_square_stat=stat,
                chi_square_p=p_value,
                magic_found=scans[i].magic_found,
                frame_plausible=scans[i].frame_plausible,
            )
        )

    if any(e.magic_found and e.frame_plausible for e in per_entry):
        verdict = "stego_frame_present"
    elif any(_entry_suspicious(e, thresholds) for e in per_entry):
        verdict = "suspicious"
    else:
        verdict = "clean"

    if verdict == "clean" and cover is not None:
        if compare_to_cover(ico, cover).alpha_lsb_diff_count > 0:
            verdict = "suspicious"

    return DetectionReport(per_entry=per_entry, verdict=verdict)
