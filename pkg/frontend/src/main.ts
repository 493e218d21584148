/** Demo page entry point; drop-in replacement for the Python package's
 * vendored extractor bundle (same module surface: `runDemoPage`).
 *
 * Query parameters: ?url=<same-origin ICO path> (default favicon.ico),
 * ?entry=all|largest (default largest).
 */

import { extractFromUrl } from "./extractor";
import {
  presentFailure,
  presentResult,
  type DemoManifest,
  type DemoUi,
} from "./present";

export * from "./crc32";
export * from "./frame";
export * from "./harvest";
export * from "./ico";
export * from "./extractor";
export * from "./present";

function domUi(doc: Document): DemoUi {
  const status = doc.getElementById("status")!;
  const payload = doc.getElementById("payload")!;
  const digest = doc.getElementById("digest")!;
  const run = doc.getElementById("run") as HTMLButtonElement;
  return {
    setStatus: (text) => (status.textContent = text),
    setPayload: (text) => (payload.textContent = text),
    setDigest: (text) => (digest.textContent = text),
    enableRun: (handler) => {
      run.disabled = false;
      run.addEventListener("click", handler);
    },
    disableRun: (reason) => {
      run.disabled = true;
      run.title = reason;
    },
  };
}

export async function runDemoPage(doc: Document = document): Promise<void> {
  const params = new URLSearchParams(doc.defaultView!.location.search);
  const url = params.get("url") ?? "favicon.ico";
  const mode = params.get("entry") === "all" ? "all" : "largest";
  const ui = domUi(doc);

  let manifest: DemoManifest | null = null;
  try {
    const response = await fetch("manifest.json");
    if (response.ok) {
      manifest = (await response.json()) as DemoManifest;
    }
  } catch {
    manifest = null; // page still renders; execution stays disabled
  }

  try {
    presentResult(await extractFromUrl(url, mode), manifest, ui);
  } catch (err) {
    presentFailure(err, ui);
  }
}
