/* In-browser alpha-LSB extractor for the demo page.
 *
 * Channel convention (must match the Python toolkit bit for bit):
 * entries in directory order (restricted to the largest entry by default,
 * ?entry=all for the concatenated buffer), pixels row-major top-down,
 * slots are pixels with alpha >= 2, payload bits MSB-first in slot LSBs.
 * Envelope: "IA" magic, version 1, flags (bit0 = raw-DEFLATE), u32-LE body
 * length, body, u32-LE CRC32 over the original payload.
 *
 * Safety: extracted bytes are rendered, never executed, unless the operator
 * presses the run button AND the SHA-256 digest matches manifest.json.
 * Canvas readback can round RGB for partially transparent pixels, but alpha
 * bytes survive readback exactly; the channel reads only alpha.
 */

const MAGIC_0 = 0x49; // "I"
const MAGIC_1 = 0x41; // "A"
const VERSION = 1;
const FLAG_COMPRESSED = 0x01;
const OVERHEAD = 12;

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c;
  }
  return table;
})();

export function crc32(bytes) {
  let c = 0xffffffff;
  for (let i = 0; i < bytes.length; i++) {
    c = CRC_TABLE[(c ^ bytes[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

export function parseIco(buffer) {
  const view = new DataView(buffer);
  if (buffer.byteLength < 6) throw new Error("not an ICO: too short");
  if (view.getUint16(0, true) !== 0 || view.getUint16(2, true) !== 1) {
    throw new Error("not an ICO: bad header");
  }
  const count = view.getUint16(4, true);
  if (count === 0) throw new Error("ICO directory is empty");
  const entries = [];
  for (let i = 0; i < count; i++) {
    const base = 6 + 16 * i;
    const size = view.getUint32(base + 8, true);
    const offset = view.getUint32(base + 12, true);
    if (offset + size > buffer.byteLength) throw new Error("truncated ICO frame");
    const bytes = new Uint8Array(buffer, offset, size);
    entries.push({
      index: i,
      width: view.getUint8(base) || 256,
      height: view.getUint8(base + 1) || 256,
      isPng:
        size >= 8 &&
        bytes[0] === 0x89 && bytes[1] === 0x50 && bytes[2] === 0x4e && bytes[3] === 0x47,
      bytes,
    });
  }
  return entries;
}

export function selectEntries(entries, mode) {
  if (mode === "all") return entries;
  let best = entries[0];
  for (const e of entries) {
    if (e.width * e.height > best.width * best.height) best = e;
  }
  return [best];
}

/* Default rasterizer: browser-native PNG decode via canvas. Tests inject a
 * pure decoder instead (no DOM there). */
export async function canvasRasterize(pngBytes) {
  const url = URL.createObjectURL(new Blob([pngBytes], { type: "image/png" }));
  try {
    const img = await new Promise((resolve, reject) => {
      const el = new Image();
      el.onload = () => resolve(el);
      el.onerror = () => reject(new Error("PNG frame failed to decode"));
      el.src = url;
    });
    const canvas = document.createElement("canvas");
    canvas.width = img.naturalWidth;
    canvas.height = img.naturalHeight;
    if (!canvas.width || !canvas.height) throw new Error("zero-dimension frame");
    const ctx = canvas.getContext("2d", { willReadFrequently: true });
    ctx.drawImage(img, 0, 0);
    const data = ctx.getImageData(0, 0, canvas.width, canvas.height);
    return { width: data.width, height: data.height, rgba: data.data };
  } finally {
    URL.revokeObjectURL(url);
  }
}

export function harvestBytes(rgbaPlanes, maxBytes) {
  const out = new Uint8Array(maxBytes);
  let pos = 0;
  const end = 8 * maxBytes;
  for (const rgba of rgbaPlanes) {
    for (let i = 3; i < rgba.length && pos < end; i += 4) {
      const alpha = rgba[i];
      if (alpha >= 2) {
        if (alpha & 1) out[pos >> 3] |= 1 << (7 - (pos & 7));
        pos++;
      }
    }
  }
  return { bytes: out, bits: pos };
}

export async function inflateRaw(bytes) {
  const stream = new Blob([bytes]).stream().pipeThrough(
    new DecompressionStream("deflate-raw"),
  );
  return new Uint8Array(await new Response(stream).arrayBuffer());
}

export async function decodeFrame(harvested) {
  const b = harvested.bytes;
  if (harvested.bits < 16 || b[0] !== MAGIC_0 || b[1] !== MAGIC_1) {
    throw new Error("no hidden payload detected (frame magic absent)");
  }
  if (harvested.bits < 8 * OVERHEAD) throw new Error("frame truncated");
  if (b[2] !== VERSION) throw new Error(`unsupported frame version ${b[2]}`);
  const flags = b[3];
  const length = b[4] | (b[5] << 8) | (b[6] << 16) | ((b[7] << 24) >>> 0);
  if (8 * (OVERHEAD + length) > harvested.bits) {
    throw new Error("declared payload exceeds harvested bits");
  }
  const body = b.subarray(8, 8 + length);
  const crcOffset = 8 + length;
  const storedCrc =
    (b[crcOffset] |
      (b[crcOffset + 1] << 8) |
      (b[crcOffset + 2] << 16) |
      ((b[crcOffset + 3] << 24) >>> 0)) >>>
    0;
  let payload;
  if (flags & FLAG_COMPRESSED) {
    payload = await inflateRaw(body);
  } else {
    payload = body.slice();
  }
  if (crc32(payload) !== storedCrc) {
    throw new Error("payload integrity check failed (CRC32 mismatch)");
  }
  return { payload, flags };
}

export async function sha256Hex(bytes) {
  const digest = await crypto.subtle.digest("SHA-256", bytes);
  return [...new Uint8Array(digest)]
    .map((v) => v.toString(16).padStart(2, "0"))
    .join("");
}

export async function extractFromUrl(url, mode, rasterize = canvasRasterize) {
  const response = await fetch(url);
  if (!response.ok) throw new Error(`fetch failed: HTTP ${response.status}`);
  const entries = selectEntries(parseIco(await response.arrayBuffer()), mode);
  const planes = [];
  let sourceEntry = null;
  for (const entry of entries) {
    if (!entry.isPng) {
      throw new Error(`entry ${entry.index} is not a PNG frame (demo decodes PNG only)`);
    }
    const pixels = await rasterize(entry.bytes);
    planes.push(pixels.rgba);
    if (!sourceEntry) {
      sourceEntry = { index: entry.index, width: pixels.width, height: pixels.height };
    }
  }
  let slotBits = 0;
  for (const rgba of planes) {
    for (let i = 3; i < rgba.length; i += 4) if (rgba[i] >= 2) slotBits++;
  }
  const harvested = harvestBytes(planes, slotBits >> 3);
  const { payload, flags } = await decodeFrame(harvested);
  let text = null;
  try {
    text = new TextDecoder("utf-8", { fatal: true }).decode(payload);
  } catch {
    /* binary payload; shown as hex by the page */
  }
  return {
    payloadBytes: payload,
    payloadText: text,
    frameFlags: flags,
    sourceEntry,
    digest: await sha256Hex(payload),
  };
}

/* Page wiring: render-only by default, execution double-gated behind a user
 * gesture plus a manifest digest match. */
export async function runDemoPage(doc = document) {
  const params = new URLSearchParams(doc.defaultView.location.search);
  const url = params.get("url") || "favicon.ico";
  const mode = params.get("entry") === "all" ? "all" : "largest";
  const status = doc.getElementById("status");
  const payloadEl = doc.getElementById("payload");
  const digestEl = doc.getElementById("digest");
  const runButton = doc.getElementById("run");

  let manifest = null;
  try {
    manifest = await (await fetch("manifest.json")).json();
  } catch {
    /* demo still renders without a manifest; execution stays disabled */
  }

  try {
    const result = await extractFromUrl(url, mode);
    status.textContent = `payload recovered: ${result.payloadBytes.length} bytes ` +
      `(entry ${result.sourceEntry.index}, ${result.sourceEntry.width}x` +
      `${result.sourceEntry.height}${result.frameFlags & FLAG_COMPRESSED ? ", compressed" : ""})`;
    payloadEl.textContent =
      result.payloadText ??
      [...result.payloadBytes].map((v) => v.toString(16).padStart(2, "0")).join(" ");
    const verified = manifest && manifest.payload_sha256 === result.digest;
    digestEl.textContent = `sha256 ${result.digest}` +
      (manifest ? (verified ? " (matches manifest)" : " (MANIFEST MISMATCH)") : "");
    if (verified && result.payloadText !== null) {
      runButton.disabled = false;
      runButton.addEventListener("click", () => {
        (0, eval)(result.payloadText);
        status.textContent += " | payload executed (check the console)";
      });
    } else {
      runButton.title = manifest
        ? "digest does not match the manifest; execution refused"
        : "no manifest present; execution refused";
    }
  } catch (err) {
    status.textContent = `extraction failed: ${err.message}`;
  }
}
