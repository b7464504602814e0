import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    testTimeout: 300_000,
    hookTimeout: 300_000,
    // tfjs keeps kernels in module state; parallel workers thrash the CPU
    pool: "forks",
    maxWorkers: 1,
    minWorkers: 1,
  },
});
