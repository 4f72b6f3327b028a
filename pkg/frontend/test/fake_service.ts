// Minimal canned-response stand-in for the unit tests; the contract tests
// talk to the real service instead.

import type { AnalysisDoc, SessionDoc } from "../src/types.js";

export function sessionDoc(overrides: Partial<SessionDoc> = {}): SessionDoc {
  return {
    id: "abc123",
    heaps: [{ tokens: 11, cap: 10, grundy: 5 }],
    nim_sum: 5,
    to_move: "first",
    status: "in_progress",
    history: [],
    ...overrides,
  };
}

export function analysisDoc(overrides: Partial<AnalysisDoc> = {}): AnalysisDoc {
  return {
    heaps: [{ tokens: 11, cap: 10, grundy: 5, zeckendorf: [3, 8] }],
    nim_sum: 5,
    winning_moves: [{ heap: 0, take: 3 }],
    hint: { heap: 0, take: 3 },
    ...overrides,
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
