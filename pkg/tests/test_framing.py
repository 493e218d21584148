import random
import struct
import zlib

import pytest
from hypothesis import given, strategies as st

from icostego.errors import (
    BadMagic,
    FrameDecodeError,
    InflateError,
    IntegrityFailure,
    TruncatedBody,
    UnsupportedVersion,
)
from icostego.framing import (
    FLAG_COMPRESSED,
    MAGIC,
    OVERHEAD,
    frame_decode,
    frame_encode,
    peek_header,
)


def raw_deflate_len(data: bytes) -> int:
    comp = zlib.compressobj(9, zlib.DEFLATED, -15)
    return len(comp.compress(data) + comp.flush())


class TestEncode:
    def test_empty_payload(self):
        frame = frame_encode(b"")
        assert frame == b"IA\x01\x00" + struct.pack("<I", 0) + struct.pack("<I", 0)
        assert len(frame) == 12

    def test_constant_run_compresses(self):
        payload = b"\x55" * 4096
        assert raw_deflate_len(payload) < 4096  # independent compressor check
        frame = frame_encode(payload)
        assert frame[3] & FLAG_COMPRESSED
        body_length = struct.unpack_from("<I", frame, 4)[0]
        assert body_length < 4096

    def test_incompressible_payload_stored_raw(self):
        payload = random.Random(0xF00D).randbytes(32)
        assert raw_deflate_len(payload) >= 32  # independent compressor check
        frame = frame_encode(payload)
        assert not frame[3] & FLAG_COMPRESSED
        assert frame[8:40] == payload

    def test_crc_is_over_original_payload(self):
        payload = b"A" * 1000
        frame = frame_encode(payload)
        assert frame[3] & FLAG_COMPRESSED
        stored_crc = struct.unpack("<I", frame[-4:])[0]
        assert stored_crc == zlib.crc32(payload)


class TestDecode:
    def test_identity_over_random_payloads(self):
        rng = random.Random(0xBEEF)
        for _ in range(1000):
            payload = rng.randbytes(rng.randint(0, 2000))
            assert frame_decode(frame_encode(payload)) == payload

    def test_bad_magic(self):
        with pytest.raises(BadMagic):
            frame_decode(b"\x00\x00" + b"\x00" * 20)

    def test_empty_stream_is_bad_magic(self):
        with pytest.raises(BadMagic):
            frame_decode(b"")

    def test_unsupported_version(self):
        frame = bytearray(frame_encode(b"x"))
        frame[2] = 9
        with pytest.raises(UnsupportedVersion):
            frame_decode(bytes(frame))

    def test_truncated_header(self):
        with pytest.raises(TruncatedBody):
            frame_decode(MAGIC + b"\x01\x00\xff")

    def test_declared_length_beyond_stream(self):
        frame = bytearray(frame_encode(b"abc"))
        struct.pack_into("<I", frame, 4, 1000)
        with pytest.raises(TruncatedBody):
            frame_decode(bytes(frame))

    def test_reserved_flag_bits_tolerated(self):
        frame = bytearray(frame_encode(b"payload"))
        frame[3] |= 0x80
        assert frame_decode(bytes(frame)) == b"payload"


class TestTamperEvidence:
    def test_every_body_and_crc_bit_flip_detected(self):
        payload = random.Random(7).randbytes(8)  # incompressible: stored raw
        frame = frame_encode(payload)
        assert not frame[3] & FLAG_COMPRESSED
        for bit in range(8 * 8, 8 * len(frame)):  # body + crc region
            tampered = bytearray(frame)
            tampered[bit // 8] ^= 1 << (7 - bit % 8)
            with pytest.raises((IntegrityFailure, InflateError)):
                frame_decode(bytes(tampered))

    def test_compressed_body_bit_flips_never_corrupt_the_payload(self):
        # DEFLATE padding bits in the final byte can absorb a flip without
        # changing the inflated output; every other flip must be rejected.
        # Either way no flip may ever yield a different payload.
        payload = b"the same text repeats; " * 40
        frame = frame_encode(payload)
        assert frame[3] & FLAG_COMPRESSED
        undetected = 0
        for bit in range(8 * 8, 8 * len(frame)):
            tampered = bytearray(frame)
            tampered[bit // 8] ^= 1 << (7 - bit % 8)
            try:
                recovered = frame_decode(bytes(tampered))
            except (IntegrityFailure, InflateError):
                continue
            undetected += 1
            assert recovered == payload
        assert undetected <= 7  # at most the padding bits of the last byte

    def test_header_bit_flips_all_raise_framing_errors(self):
        frame = frame_encode(b"\x01\x02\x03\x04")
        for bit in range(0, 8 * 8):
            if bit // 8 == 3 and bit % 8 != 7:
                continue  # reserved flag bits are tolerated by design
            tampered = bytearray(frame)
            tampered[bit // 8] ^= 1 << (7 - bit % 8)
            with pytest.raises(FrameDecodeError):
                frame_decode(bytes(tampered))


class TestPeekHeader:
    def test_parses_prefix(self):
        frame = frame_encode(b"\xaa" * 100)
        header = peek_header(frame[:8])
        assert header is not None
        assert header.version == 1
        assert header.body_length == struct.unpack_from("<I", frame, 4)[0]

    def test_none_without_magic(self):
        assert peek_header(b"XX\x01\x00\x00\x00\x00\x00") is None
        assert peek_header(b"IA") is None


@given(payload=st.binary(max_size=4096))
def test_identity_and_overhead_bound(payload):
    frame = frame_encode(payload)
    assert frame_decode(frame) == payload
    assert len(frame) <= len(payload) + OVERHEAD
