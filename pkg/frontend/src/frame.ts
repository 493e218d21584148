/** Payload envelope decoding.
 *
 * Wire layout (u32 fields little-endian):
 *   "IA" magic | version 0x01 | flags (bit0 = raw DEFLATE) | body length
 *   | body | CRC32 over the original payload
 */

import { crc32 } from "./crc32";
import type { Harvest } from "./harvest";

export const MAGIC_0 = 0x49;
export const MAGIC_1 = 0x41;
export const VERSION = 1;
export const FLAG_COMPRESSED = 0x01;
export const OVERHEAD = 12;

export class FrameDecodeError extends Error {}
export class BadMagicError extends FrameDecodeError {}
export class UnsupportedVersionError extends FrameDecodeError {}
export class TruncatedBodyError extends FrameDecodeError {}
export class IntegrityError extends FrameDecodeError {}
export class InflateError extends FrameDecodeError {}

export async function inflateRaw(bytes: Uint8Array): Promise<Uint8Array> {
  let stream: ReadableStream;
  try {
    stream = new Blob([bytes as BlobPart])
      .stream()
      .pipeThrough(new DecompressionStream("deflate-raw"));
    return new Uint8Array(await new Response(stream).arrayBuffer());
  } catch (err) {
    throw new InflateError(`raw DEFLATE stream rejected: ${String(err)}`);
  }
}

export interface DecodedFrame {
  payload: Uint8Array;
  flags: number;
}

export async function decodeFrame(harvest: Harvest): Promise<DecodedFrame> {
  const b = harvest.bytes;
  if (harvest.bits < 16 || b[0] !== MAGIC_0 || b[1] !== MAGIC_1) {
    throw new BadMagicError("no payload frame magic in the LSB stream");
  }
  if (harvest.bits < 8 * OVERHEAD) {
    throw new TruncatedBodyError("too few slots for even an empty frame");
  }
  if (b[2] !== VERSION) {
    throw new UnsupportedVersionError(`frame version ${b[2]}, decoder knows ${VERSION}`);
  }
  const flags = b[3]!;
  const length =
    (b[4]! | (b[5]! << 8) | (b[6]! << 16) | (b[7]! << 24)) >>> 0;
  if (8 * (OVERHEAD + length) > harvest.bits) {
    throw new TruncatedBodyError("declared body exceeds the harvested bits");
  }
  const body = b.subarray(8, 8 + length);
  const crcBase = 8 + length;
  const storedCrc =
    (b[crcBase]! |
      (b[crcBase + 1]! << 8) |
      (b[crcBase + 2]! << 16) |
      (b[crcBase + 3]! << 24)) >>>
    0;
  const payload = flags & FLAG_COMPRESSED ? await inflateRaw(body) : body.slice();
  if (crc32(payload) !== storedCrc) {
    throw new IntegrityError("payload CRC32 mismatch");
  }
  return { payload, flags };
}
