import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // the live-server suite boots a real API process
    testTimeout: 15_000,
    hookTimeout: 30_000,
  },
});
