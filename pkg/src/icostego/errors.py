"""Exception and warning types shared across the toolkit."""


class IcoStegoError(Exception):
    """Base class for all toolkit errors."""


# --- ICO container ---------------------------------------------------------

class MalformedHeader(IcoStegoError):
    """Header fields violate the ICO layout (reserved != 0, type != 1, or a
    frame window overlapping the header/directory)."""


class TruncatedFile(IcoStegoError):
    """A declared window (directory table or frame blob) runs past the buffer."""


class ZeroEntries(IcoStegoError):
    """The directory declares zero images."""


class TooManyEntries(IcoStegoError):
    """More entries than the u16 count field can represent."""


class OversizeFrame(IcoStegoError):
    """A frame size or offset exceeds the u32 directory fields."""


# --- pixel codec -----------------------------------------------------------

class UnsupportedDepth(IcoStegoError):
    """DIB frame with a bit depth other than 32 bpp."""


class CorruptFrame(IcoStegoError):
    """Frame bytes are inconsistent with their declared layout, or the PNG
    stream fails to decode."""


class ZeroDimension(IcoStegoError):
    """Encoding an image with width or height of zero."""


class DimensionMismatchWarning(UserWarning):
    """Directory geometry disagrees with the decoded frame.

    The decoded size wins; stale directory dimensions are common in the wild.
    """


# --- payload framing -------------------------------------------------------

class FrameDecodeError(IcoStegoError):
    """Base class for failures while decoding a payload frame."""


class BadMagic(FrameDecodeError):
    """No frame magic at the start of the stream: the carrier is clean or the
    channel has been destroyed."""


class UnsupportedVersion(FrameDecodeError):
    """Frame magic present but the version byte is unknown."""


class TruncatedBody(FrameDecodeError):
    """Declared body length exceeds the available stream."""


class IntegrityFailure(FrameDecodeError):
    """CRC32 over the recovered payload does not match the stored checksum."""


class InflateError(FrameDecodeError):
    """The compressed body is not a valid raw DEFLATE stream."""


# --- embedding engine ------------------------------------------------------

class PayloadTooLarge(IcoStegoError):
    """Framed payload needs more bits than the selected entries can hold."""


# --- steganalysis ----------------------------------------------------------

class InsufficientSample(IcoStegoError):
    """Too few eligible pixels for a meaningful statistic."""


class NoContributingPairs(IcoStegoError):
    """Fewer than two alpha histogram pairs have any mass; the pair test is
    undefined."""
