/** LSB harvest over RGBA pixel planes.
 *
 * The channel convention, bit-for-bit the embedder's: a pixel is a slot when
 * its alpha is >= 2; slots are visited plane by plane (entries in directory
 * order), pixels row-major top-down; harvested bits fill bytes MSB-first.
 * Alpha bytes survive canvas readback exactly (unlike RGB, which may round
 * under premultiplication), which is why only alpha is ever read here.
 */

export const ELIGIBLE_MIN = 2;

export interface Harvest {
  bytes: Uint8Array;
  /** Bits actually available; may be fewer than 8 * bytes.length. */
  bits: number;
}

export function countSlots(rgba: Uint8Array): number {
  let slots = 0;
  for (let i = 3; i < rgba.length; i += 4) {
    if (rgba[i]! >= ELIGIBLE_MIN) {
      slots++;
    }
  }
  return slots;
}

export function harvestBytes(planes: Uint8Array[], maxBytes: number): Harvest {
  const out = new Uint8Array(maxBytes);
  const end = 8 * maxBytes;
  let pos = 0;
  for (const rgba of planes) {
    for (let i = 3; i < rgba.length && pos < end; i += 4) {
      const alpha = rgba[i]!;
      if (alpha >= ELIGIBLE_MIN) {
        if (alpha & 1) {
          out[pos >> 3] = out[pos >> 3]! | (1 << (7 - (pos & 7)));
        }
        pos++;
      }
    }
  }
  return { bytes: out, bits: pos };
}
