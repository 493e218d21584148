/** Extraction pipeline: ICO bytes -> pixels -> LSB harvest -> payload.
 *
 * The PNG-to-pixels step is injectable: the browser default rasterizes via
 * an offscreen canvas (getImageData returns exact alpha bytes), while the
 * Node test suite injects a pure decoder. Everything downstream of the
 * rasterizer is platform-independent.
 */

import { parseIco, selectEntries, type EntrySelection } from "./ico";
import { countSlots, harvestBytes } from "./harvest";
import { decodeFrame } from "./frame";

export interface RasterImage {
  width: number;
  height: number;
  rgba: Uint8Array;
}

export type Rasterizer = (pngBytes: Uint8Array) => Promise<RasterImage>;

export interface ExtractionResult {
  payloadBytes: Uint8Array;
  /** UTF-8 decode of the payload, or null when it is not valid text. */
  payloadText: string | null;
  frameFlags: number;
  sourceEntry: { index: number; width: number; height: number };
  /** Lowercase hex SHA-256 of payloadBytes. */
  digest: string;
}

export async function canvasRasterize(pngBytes: Uint8Array): Promise<RasterImage> {
  const url = URL.createObjectURL(new Blob([pngBytes as BlobPart], { type: "image/png" }));
  try {
    const img = await new Promise<HTMLImageElement>((resolve, reject) => {
      const el = new Image();
      el.onload = () => resolve(el);
      el.onerror = () => reject(new Error("PNG frame failed to decode"));
      el.src = url;
    });
    const canvas = document.createElement("canvas");
    canvas.width = img.naturalWidth;
    canvas.height = img.naturalHeight;
    if (!canvas.width || !canvas.height) {
      throw new Error("zero-dimension frame");
    }
    const ctx = canvas.getContext("2d", { willReadFrequently: true });
    if (!ctx) {
      throw new Error("2d canvas context unavailable");
    }
    ctx.drawImage(img, 0, 0);
    const data = ctx.getImageData(0, 0, canvas.width, canvas.height);
    return { width: data.width, height: data.height, rgba: new Uint8Array(data.data.buffer) };
  } finally {
    URL.revokeObjectURL(url);
  }
}

export async function sha256Hex(bytes: Uint8Array): Promise<string> {
  const digest = await crypto.subtle.digest("SHA-256", bytes as BufferSource);
  return [...new Uint8Array(digest)]
    .map((v) => v.toString(16).padStart(2, "0"))
    .join("");
}

export async function extractFromBytes(
  icoBytes: ArrayBuffer,
  mode: EntrySelection,
  rasterize: Rasterizer,
): Promise<ExtractionResult> {
  const entries = selectEntries(parseIco(icoBytes), mode);
  const planes: Uint8Array[] = [];
  let sourceEntry: ExtractionResult["sourceEntry"] | null = null;
  for (const entry of entries) {
    if (!entry.isPng) {
      throw new Error(
        `entry ${entry.index} is not a PNG frame (the demo decodes PNG only)`,
      );
    }
    const pixels = await rasterize(entry.bytes);
    planes.push(pixels.rgba);
    sourceEntry ??= { index: entry.index, width: pixels.width, height: pixels.height };
  }
  const slotBits = planes.reduce((total, rgba) => total + countSlots(rgba), 0);
  const harvest = harvestBytes(planes, slotBits >> 3);
  const { payload, flags } = await decodeFrame(harvest);
  let payloadText: string | null = null;
  try {
    payloadText = new TextDecoder("utf-8", { fatal: true }).decode(payload);
  } catch {
    payloadText = null;
  }
  return {
    payloadBytes: payload,
    payloadText,
    frameFlags: flags,
    sourceEntry: sourceEntry!,
    digest: await sha256Hex(payload),
  };
}

export async function extractFromUrl(
  url: string,
  mode: EntrySelection,
  rasterize: Rasterizer = canvasRasterize,
): Promise<ExtractionResult> {
  const response = await fetch(url);
  if (!response.ok) {
    throw new Error(`fetch failed: HTTP ${response.status}`);
  }
  return extractFromBytes(await response.arrayBuffer(), mode, rasterize);
}
