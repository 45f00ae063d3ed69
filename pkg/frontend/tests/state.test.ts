import { describe, expect, it } from "vitest";
import type { ComparePayload } from "../src/api.js";
import { ExplorationTrail, ResultCache, SelectionGuard } from "../src/state.js";

function payload(seed: string, n: number): ComparePayload {
  return {
    seed,
    seed_title: `Study ${seed}`,
    seed_journal: "t0-j0",
    n,
    citation: [],
    usage: [],
    mean_similarity_citation: null,
    mean_similarity_usage: null,
    winner: null,
  };
}

describe("ExplorationTrail", () => {
  it("records visits in order with timestamps", () => {
    const trail = new ExplorationTrail();
    trail.append("a0001", 1000);
    trail.append("a0002", 2000);
    trail.append("a0001", 3000);
    expect(trail.entries()).toEqual([
      { seed: "a0001", at: 1000 },
      { seed: "a0002", at: 2000 },
      { seed: "a0001", at: 3000 },
    ]);
    expect(trail.length).toBe(3);
  });

  it("defaults the timestamp to now", () => {
    const before = Date.now();
    const entry = new ExplorationTrail().append("a0001");
    expect(entry.at).toBeGreaterThanOrEqual(before);
    expect(entry.at).toBeLessThanOrEqual(Date.now());
  });

  it("is append-only: the exposed list is a copy", () => {
    const trail = new ExplorationTrail();
    trail.append("a0001", 1000);
    const leaked = trail.entries() as { seed: string; at: number }[];
    leaked.pop();
    leaked.push({ seed: "intruder", at: 0 });
    expect(trail.entries()).toEqual([{ seed: "a0001", at: 1000 }]);
  });
});

describe("ResultCache", () => {
  it("misses before put, hits after", () => {
    const cache = new ResultCache();
    expect(cache.get("a0001", 10)).toBeUndefined();
    const p = payload("a0001", 10);
    cache.put(p);
    expect(cache.get("a0001", 10)).toBe(p);
  });

  it("keys by seed and n together", () => {
    const cache = new ResultCache();
    const p5 = payload("a0001", 5);
    const p10 = payload("a0001", 10);
    cache.put(p5);
    cache.put(p10);
    expect(cache.get("a0001", 5)).toBe(p5);
    expect(cache.get("a0001", 10)).toBe(p10);
    expect(cache.get("a0002", 10)).toBeUndefined();
    expect(cache.size).toBe(2);
  });

  it("does not collide on crafted seed names", () => {
    const cache = new ResultCache();
    cache.put(payload("a1", 10));
    expect(cache.get("a", 101)).toBeUndefined();
  });
});

describe("SelectionGuard", () => {
  it("hands out strictly increasing tickets", () => {
    const guard = new SelectionGuard();
    const first = guard.begin();
    const second = guard.begin();
    expect(second).toBeGreaterThan(first);
  });

  it("only the most recent ticket may render", () => {
    const guard = new SelectionGuard();
    const slow = guard.begin();
    const fast = guard.begin();
    expect(guard.isCurrent(slow)).toBe(false);
    expect(guard.isCurrent(fast)).toBe(true);
  });

  it("last selection wins even when the earlier request resolves later", async () => {
    const guard = new SelectionGuard();
    const rendered: string[] = [];

    async function request(seed: string, delayMs: number): Promise<void> {
      const ticket = guard.begin();
      await new Promise((r) => setTimeout(r, delayMs));
      if (guard.isCurrent(ticket)) rendered.push(seed);
    }

    const slowFirst = request("a0001", 40);
    const fastSecond = request("a0002", 5);
    await Promise.all([slowFirst, fastSecond]);
    expect(rendered).toEqual(["a0002"]);
  });
});
