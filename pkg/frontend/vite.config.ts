import { defineConfig } from "vite";

// Library build: one self-contained ES module, drop-in replacement for the
// Python package's vendored demo_assets/extractor.js (same exports).
export default defineConfig({
  build: {
    lib: {
      entry: "src/main.ts",
      formats: ["es"],
      fileName: () => "extractor.js",
    },
    outDir: "dist",
    target: "es2020",
    minify: false,
  },
});
