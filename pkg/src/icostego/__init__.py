"""ICO favicon alpha-channel LSB steganography toolkit.

Embedding, capacity analysis, extraction, statistical detection and
sanitization of payloads carried in the least significant bits of ICO alpha
planes. Dual-use research tooling: the embedder exists so the detector and
sanitizer have something real to be tested against, and nothing in this
package ever executes extracted payload bytes.
"""

from icostego.analysis import (
    CoverDiffReport,
    DetectionReport,
    DetectorThresholds,
    chi_square_lsb,
    compare_to_cover,
    detect,
    lsb_entropy,
    scan_for_frame,
)
from icostego.codec import RgbaImage, decode_frame, encode_frame
from icostego.container import (
    FrameFormat,
    IcoEntry,
    IcoFile,
    classify_frame,
    parse_ico,
    serialize_ico,
)
from icostego.engine import (
    CapacityReport,
    EmbedOptions,
    EmbedSlot,
    capacity,
    eligible_slots,
    embed,
    extract,
)
from icostego.framing import frame_decode, frame_encode
from icostego.sanitize import (
    NeutralizationCheck,
    SanitizeMode,
    SanitizeOptions,
    sanitize,
    verify_neutralized,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityReport",
    "CoverDiffReport",
    "DetectionReport",
    "DetectorThresholds",
    "EmbedOptions",
    "EmbedSlot",
    "FrameFormat",
    "IcoEntry",
    "IcoFile",
    "NeutralizationCheck",
    "RgbaImage",
    "SanitizeMode",
    "SanitizeOptions",
    "capacity",
    "chi_square_lsb",
    "classify_frame",
    "compare_to_cover",
    "decode_frame",
    "detect",
    "eligible_slots",
    "embed",
    "encode_frame",
    "extract",
    "frame_decode",
    "frame_encode",
    "lsb_entropy",
    "parse_ico",
    "sanitize",
    "scan_for_frame",
    "serialize_ico",
    "verify_neutralized",
]
