import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    globalSetup: ["tests/service.setup.ts"],
    environment: "node",
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
