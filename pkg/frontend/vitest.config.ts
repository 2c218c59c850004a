import { defineConfig } from 'vitest/config';

// The page origin matches the service port used by test/walkthrough.spec.ts:
// the shipped UI is served same-origin by the API process, so the tests run
// same-origin too (a mismatched origin is correctly blocked as CORS).
export default defineConfig({
  test: {
    environment: 'happy-dom',
    environmentOptions: { happyDOM: { url: 'http://127.0.0.1:18731' } },
    include: ['test/**/*.spec.ts'],
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
