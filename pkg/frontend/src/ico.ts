/** Byte-level ICO directory parsing.
 *
 * Mirrors the toolkit's container layout rules: 6-byte header (reserved 0,
 * type 1, u16-LE count), 16-byte directory entries, frame windows inside the
 * buffer. The browser never gets to pick a frame for us; frame selection is
 * explicit so the harvest order matches the embedder's convention.
 */

export interface IcoEntryMeta {
  index: number;
  /** Logical 1..256 (the stored byte uses 0 to encode 256). */
  width: number;
  height: number;
  isPng: boolean;
  bytes: Uint8Array;
}

export type EntrySelection = "largest" | "all";

const PNG_SIG = [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a];

export function parseIco(buffer: ArrayBuffer): IcoEntryMeta[] {
  const view = new DataView(buffer);
  if (buffer.byteLength < 6) {
    throw new Error("not an ICO: file shorter than the 6-byte header");
  }
  if (view.getUint16(0, true) !== 0 || view.getUint16(2, true) !== 1) {
    throw new Error("not an ICO: bad reserved/type fields");
  }
  const count = view.getUint16(4, true);
  if (count === 0) {
    throw new Error("ICO directory declares no images");
  }
  const dirEnd = 6 + 16 * count;
  if (buffer.byteLength < dirEnd) {
    throw new Error("truncated ICO directory");
  }
  const entries: IcoEntryMeta[] = [];
  for (let i = 0; i < count; i++) {
    const base = 6 + 16 * i;
    const size = view.getUint32(base + 8, true);
    const offset = view.getUint32(base + 12, true);
    if (offset < dirEnd || offset + size > buffer.byteLength) {
      throw new Error(`entry ${i}: frame window out of bounds`);
    }
    const bytes = new Uint8Array(buffer, offset, size);
    entries.push({
      index: i,
      width: view.getUint8(base) || 256,
      height: view.getUint8(base + 1) || 256,
      isPng: size >= 8 && PNG_SIG.every((b, j) => bytes[j] === b),
      bytes,
    });
  }
  return entries;
}

/** Largest by directory area (ties to the first entry), or every entry in
 * directory order, matching the embedder's default and "all" modes. */
export function selectEntries(
  entries: IcoEntryMeta[],
  mode: EntrySelection,
): IcoEntryMeta[] {
  if (mode === "all") {
    return entries;
  }
  let best = entries[0]!;
  for (const entry of entries) {
    if (entry.width * entry.height > best.width * best.height) {
      best = entry;
    }
  }
  return [best];
}
