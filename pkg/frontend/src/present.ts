/** Result presentation and the double-gated execution path.
 *
 * Rendering is the default and only automatic behavior. Execution requires
 * BOTH a user-activated control and a payload digest that matches the
 * bundled manifest; a tampered or absent manifest disables the control
 * unconditionally. The UI surface is an interface so the gating logic is
 * testable without a DOM.
 */

import { FLAG_COMPRESSED } from "./frame";
import type { ExtractionResult } from "./extractor";

export interface DemoManifest {
  version: number;
  payload_sha256: string;
  payload_bytes: number;
  entry_selection: string | number;
  source_entry: { index: number; width: number; height: number };
}

export interface DemoUi {
  setStatus(text: string): void;
  setPayload(text: string): void;
  setDigest(text: string): void;
  /** Arm the opt-in control; `run` fires only on user activation. */
  enableRun(run: () => void): void;
  disableRun(reason: string): void;
}

export type Executor = (code: string) => void;

/** Indirect eval: runs in global scope, page context. Browser-only default;
 * tests inject a recorder. */
export const pageExecutor: Executor = (code) => {
  (0, eval)(code);
};

export function hexDump(bytes: Uint8Array): string {
  return [...bytes].map((v) => v.toString(16).padStart(2, "0")).join(" ");
}

export function presentResult(
  result: ExtractionResult,
  manifest: DemoManifest | null,
  ui: DemoUi,
  execute: Executor = pageExecutor,
): void {
  const compressed = result.frameFlags & FLAG_COMPRESSED ? ", compressed" : "";
  ui.setStatus(
    `payload recovered: ${result.payloadBytes.length} bytes (entry ` +
      `${result.sourceEntry.index}, ${result.sourceEntry.width}x` +
      `${result.sourceEntry.height}${compressed})`,
  );
  ui.setPayload(result.payloadText ?? hexDump(result.payloadBytes));

  const verified = manifest !== null && manifest.payload_sha256 === result.digest;
  ui.setDigest(
    `sha256 ${result.digest}` +
      (manifest === null
        ? ""
        : verified
          ? " (matches manifest)"
          : " (MANIFEST MISMATCH)"),
  );
  if (verified && result.payloadText !== null) {
    const text = result.payloadText;
    ui.enableRun(() => {
      execute(text);
      ui.setStatus("payload executed (check the console)");
    });
  } else if (!verified) {
    ui.disableRun(
      manifest === null
        ? "no manifest present; execution refused"
        : "digest does not match the manifest; execution refused",
    );
  } else {
    ui.disableRun("payload is not UTF-8 text; execution refused");
  }
}

export function presentFailure(err: unknown, ui: DemoUi): void {
  const message = err instanceof Error ? err.message : String(err);
  ui.setStatus(`extraction failed: ${message}`);
  ui.disableRun("nothing extracted");
}
