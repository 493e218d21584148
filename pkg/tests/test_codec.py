import io
import random
import struct
import zlib

import pytest
from PIL import Image

from icostego.codec import RgbaImage, decode_frame, encode_frame
from icostego.container import FrameFormat, IcoEntry, parse_ico
from icostego.errors import (
    CorruptFrame,
    DimensionMismatchWarning,
    UnsupportedDepth,
    ZeroDimension,
)

PNG_SIG = b"\x89PNG\r\n\x1a\n"


def dib_header(width, doubled_height, bpp=32, compression=0, header_size=40):
    return struct.pack(
        "<IiiHHIIiiII", header_size, width, doubled_height, 1, bpp, compression,
        0, 0, 0, 0, 0,
    )


def png_chunk(tag, payload):
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


class TestDecodeDib:
    def test_hand_assembled_1x1(self):
        # header + XOR pixel (B,G,R,A) = (00,00,00,FF) + one zero mask row
        frame = dib_header(1, 2) + bytes((0x00, 0x00, 0x00, 0xFF)) + b"\x00" * 4
        image = decode_frame(IcoEntry(1, 1, frame))
        assert (image.width, image.height) == (1, 1)
        assert bytes(image.pixels) == bytes((0, 0, 0, 255))

    def test_bottom_up_row_order_and_bgra_swap(self):
        # stored first row (bottom): blue-ish pixel; second row (top): red-ish
        bottom = bytes((255, 0, 0, 200))  # B,G,R,A -> RGBA (0,0,255,200)
        top = bytes((0, 0, 255, 100))  # -> RGBA (255,0,0,100)
        frame = dib_header(1, 4) + bottom + top + b"\x00" * 8
        image = decode_frame(IcoEntry(1, 2, frame))
        assert bytes(image.pixels[0:4]) == bytes((255, 0, 0, 100))
        assert bytes(image.pixels[4:8]) == bytes((0, 0, 255, 200))

    def test_missing_and_mask_tolerated(self, fixtures_dir):
        # Pillow's own ICO writer omits the AND mask entirely
        ico = parse_ico((fixtures_dir / "pil_maskless_dib_16.ico").read_bytes())
        image = decode_frame(ico.entries[0])
        assert (image.width, image.height) == (16, 16)
        assert set(image.alpha_plane()) == {255}

    def test_unsupported_depth_synthetic(self):
        frame = dib_header(1, 2, bpp=24) + b"\x00" * 8
        with pytest.raises(UnsupportedDepth):
            decode_frame(IcoEntry(1, 1, frame))

    def test_unsupported_depth_real_4bpp_icon(self, fixtures_dir):
        ico = parse_ico((fixtures_dir / "real_clang_bugcatcher_4bpp.ico").read_bytes())
        with pytest.raises(UnsupportedDepth):
            decode_frame(ico.entries[0])

    def test_truncated_xor_section(self):
        frame = dib_header(4, 8) + b"\x00" * 10
        with pytest.raises(CorruptFrame):
            decode_frame(IcoEntry(4, 4, frame))

    def test_odd_doubled_height_rejected(self):
        frame = dib_header(1, 3) + b"\x00" * 12
        with pytest.raises(CorruptFrame):
            decode_frame(IcoEntry(1, 1, frame))

    def test_compressed_dib_rejected(self):
        frame = dib_header(1, 2, compression=3) + b"\x00" * 8
        with pytest.raises(CorruptFrame):
            decode_frame(IcoEntry(1, 1, frame))

    def test_wrong_header_size_rejected(self):
        frame = dib_header(1, 2, header_size=124) + b"\x00" * 8
        with pytest.raises(CorruptFrame):
            decode_frame(IcoEntry(1, 1, frame))


class TestEncodeDib:
    def test_mask_padding_2x2(self):
        # 2 mask bits per row padded to 32-bit rows: 4 bytes/row x 2 rows
        img = RgbaImage.filled(2, 2, (1, 2, 3, 4))
        frame = encode_frame(img, FrameFormat.DIB)
        assert len(frame) == 40 + 2 * 2 * 4 + 8
        assert frame[-8:] == b"\x00" * 8

    def test_xor_section_3x3(self):
        img = RgbaImage.filled(3, 3, (9, 8, 7, 6))
        frame = encode_frame(img, FrameFormat.DIB)
        xor = frame[40 : 40 + 36]
        assert len(xor) == 36
        assert xor[:4] == bytes((7, 8, 9, 6))  # BGRA order

    def test_doubled_height_field(self):
        img = RgbaImage.filled(5, 7, (0, 0, 0, 255))
        frame = encode_frame(img, FrameFormat.DIB)
        assert struct.unpack_from("<i", frame, 8)[0] == 14

    def test_zero_dimension(self):
        with pytest.raises(ZeroDimension):
            encode_frame(RgbaImage(0, 4, bytearray()), FrameFormat.DIB)


class TestDecodePng:
    def test_uniform_rgba_fixture(self, fixtures_dir):
        # independently generated: every pixel (10, 20, 30, 255)
        ico = parse_ico((fixtures_dir / "opaque_png_64.ico").read_bytes())
        image = decode_frame(ico.entries[0])
        assert (image.width, image.height) == (64, 64)
        assert bytes(image.pixels) == bytes((10, 20, 30, 255)) * 4096

    def test_truncated_idat(self, fixtures_dir):
        ico = parse_ico((fixtures_dir / "opaque_png_64.ico").read_bytes())
        entry = ico.entries[0]
        broken = IcoEntry(64, 64, entry.frame_bytes[:-30])
        with pytest.raises(CorruptFrame):
            decode_frame(broken)

    def test_palette_png_expands_to_rgba(self):
        im = Image.new("P", (4, 4))
        im.putpalette([0, 0, 0, 200, 100, 50] + [0] * 750)
        im.paste(1, (0, 0, 4, 4))
        buf = io.BytesIO()
        im.save(buf, "PNG", transparency=bytes((10, 255)))
        image = decode_frame(IcoEntry(4, 4, buf.getvalue()))
        assert bytes(image.pixels[:4]) == bytes((200, 100, 50, 255))

    def test_grayscale16_narrows_by_high_byte(self):
        # samples at multiples of 257 make every narrowing convention agree
        im = Image.new("I;16", (2, 1))
        im.putpixel((0, 0), 0)
        im.putpixel((1, 0), 257 * 77)
        buf = io.BytesIO()
        im.save(buf, "PNG")
        image = decode_frame(IcoEntry(2, 1, buf.getvalue()))
        assert bytes(image.pixels) == bytes((0, 0, 0, 255, 77, 77, 77, 255))

    def test_interlaced_input_decodes(self):
        ihdr = struct.pack(">IIBBBBB", 1, 1, 8, 6, 0, 0, 1)
        png = (
            PNG_SIG
            + png_chunk(b"IHDR", ihdr)
            + png_chunk(b"IDAT", zlib.compress(b"\x00\x09\x08\x07\x06"))
            + png_chunk(b"IEND", b"")
        )
        image = decode_frame(IcoEntry(1, 1, png))
        assert bytes(image.pixels) == bytes((9, 8, 7, 6))

    def test_dimension_mismatch_warns_and_trusts_frame(self, fixtures_dir):
        ico = parse_ico((fixtures_dir / "opaque_png_64.ico").read_bytes())
        lying = IcoEntry(16, 16, ico.entries[0].frame_bytes)
        with pytest.warns(DimensionMismatchWarning):
            image = decode_frame(lying)
        assert (image.width, image.height) == (64, 64)


class TestRoundTrip:
    @pytest.mark.parametrize("fmt", [FrameFormat.PNG, FrameFormat.DIB])
    def test_random_images_round_trip_exactly(self, fmt):
        rng = random.Random(0xC0DEC)
        for _ in range(200):
            w = rng.randint(1, 128)
            h = rng.randint(1, 128)
            img = RgbaImage(w, h, bytearray(rng.randbytes(4 * w * h)))
            entry = IcoEntry(min(w, 256), min(h, 256), encode_frame(img, fmt))
            decoded = decode_frame(entry)
            assert decoded.pixels == img.pixels
            assert (decoded.width, decoded.height) == (w, h)

    def test_alpha_plane_never_remapped(self):
        alpha = bytes(range(256))
        img = RgbaImage(16, 16, bytearray().join(
            bytearray((0, 0, 0, a)) for a in alpha
        ))
        for fmt in FrameFormat:
            entry = IcoEntry(16, 16, encode_frame(img, fmt))
            assert bytes(decode_frame(entry).alpha_plane()) == alpha
