/** Cross-component equivalence: every shared fixture embedded and extracted
 * by the Python toolkit must extract to byte-identical payloads here.
 *
 * Fixtures come from scripts/make_shared_fixtures.py in the repo root; the
 * canvas rasterizer is replaced by the pure PNG decoder (alpha bytes are
 * identical either way; canvas readback preserves alpha exactly).
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { BadMagicError } from "../src/frame";
import { extractFromBytes, sha256Hex } from "../src/extractor";
import type { EntrySelection } from "../src/ico";
import { testRasterize } from "./pngDecode";

const FIXTURES = join(__dirname, "fixtures");

interface FixtureRecord {
  name: string;
  stego: string;
  expected_payload: string | null;
  entry_mode: EntrySelection;
  sha256: string | null;
  payload_is_text: boolean;
}

const records: FixtureRecord[] = JSON.parse(
  readFileSync(join(FIXTURES, "records.json"), "utf-8"),
);

function icoBuffer(name: string): ArrayBuffer {
  const raw = readFileSync(join(FIXTURES, name));
  return raw.buffer.slice(raw.byteOffset, raw.byteOffset + raw.byteLength);
}

describe("payload equivalence with the embedding toolkit", () => {
  for (const record of records.filter((r) => r.expected_payload !== null)) {
    it(`${record.name} (${record.entry_mode})`, async () => {
      const result = await extractFromBytes(
        icoBuffer(record.stego),
        record.entry_mode,
        testRasterize,
      );
      const expected = readFileSync(join(FIXTURES, record.expected_payload!));
      expect([...result.payloadBytes]).toEqual([...expected]);
      expect(result.digest).toBe(record.sha256);
      expect(await sha256Hex(result.payloadBytes)).toBe(record.sha256);
      expect(result.payloadText !== null).toBe(record.payload_is_text);
    });
  }

  it("clean icon surfaces BadMagic (no hidden payload)", async () => {
    await expect(
      extractFromBytes(icoBuffer("clean.ico"), "largest", testRasterize),
    ).rejects.toThrow(BadMagicError);
  });

  it("demo fixture recovers the demo console message", async () => {
    const result = await extractFromBytes(
      icoBuffer("demo_message.ico"),
      "largest",
      testRasterize,
    );
    expect(result.payloadText).toBe("console.log('Success from the ICO file!')");
  });

  it("generated demo site manifest matches the favicon payload digest", async () => {
    const manifest = JSON.parse(
      readFileSync(join(FIXTURES, "demo_site", "manifest.json"), "utf-8"),
    );
    const result = await extractFromBytes(
      icoBuffer(join("demo_site", "favicon.ico")),
      "largest",
      testRasterize,
    );
    expect(result.digest).toBe(manifest.payload_sha256);
    expect(result.payloadBytes.length).toBe(manifest.payload_bytes);
    expect(result.sourceEntry.index).toBe(manifest.source_entry.index);
  });
});
