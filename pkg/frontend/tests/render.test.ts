// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";
import { ApiError, type ComparePayload, type RecommendationItem } from "../src/api.js";
import {
  badgeClass,
  escapeHtml,
  formatScore,
  formatSimilarity,
  formatTime,
  renderBanner,
  renderColumn,
  renderComparison,
  renderError,
  renderItem,
  renderTrail,
} from "../src/render.js";

function parse(html: string): HTMLElement {
  const host = document.createElement("div");
  host.innerHTML = html;
  return host;
}

function item(over: Partial<RecommendationItem> = {}): RecommendationItem {
  return {
    article: "a0001",
    title: "Study a0001 (t0-j0)",
    journal: "t0-j0",
    score: 0.5,
    rank: 1,
    seed_journal_similarity: 0.42,
    ...over,
  };
}

function comparison(over: Partial<ComparePayload> = {}): ComparePayload {
  return {
    seed: "a0009",
    seed_title: "Study a0009 (t0-j1)",
    seed_journal: "t0-j1",
    n: 10,
    citation: [item(), item({ article: "a0002", rank: 2, score: 0.25 })],
    usage: [item({ article: "a0003", rank: 1, score: 1 })],
    mean_similarity_citation: 0.61,
    mean_similarity_usage: 0.98,
    winner: "citation",
    ...over,
  };
}

describe("formatting", () => {
  it("prints scores with four decimals from the payload value", () => {
    expect(formatScore(0.7071067811865475)).toBe("0.7071");
    expect(formatScore(1)).toBe("1.0000");
  });

  it("prints similarities with three decimals and n/a for null", () => {
    expect(formatSimilarity(1)).toBe("1.000");
    expect(formatSimilarity(0.123456)).toBe("0.123");
    expect(formatSimilarity(null)).toBe("n/a");
  });

  it("prints trail times as UTC clock time", () => {
    expect(formatTime(0)).toBe("00:00:00");
    expect(formatTime(Date.UTC(2026, 0, 1, 12, 34, 56))).toBe("12:34:56");
  });

  it("escapes markup and attribute quotes", () => {
    expect(escapeHtml(`<b x="y">&`)).toBe("&lt;b x=&quot;y&quot;&gt;&amp;");
  });
});

describe("badgeClass", () => {
  it("gives the exact same-journal value its own style", () => {
    expect(badgeClass(1)).toBe("badge badge-same");
  });

  it("styles cross-journal and missing values differently", () => {
    expect(badgeClass(0.9999)).toBe("badge badge-cross");
    expect(badgeClass(0)).toBe("badge badge-cross");
    expect(badgeClass(null)).toBe("badge badge-none");
  });
});

describe("renderItem", () => {
  it("shows the payload rank, not a recomputed position", () => {
    const host = parse(renderItem(item({ rank: 7 })));
    expect(host.querySelector(".rank")?.textContent).toBe("7");
  });

  it("keeps the article id on the reseed button", () => {
    const host = parse(renderItem(item({ article: "a0042" })));
    const button = host.querySelector<HTMLElement>("button.reseed");
    expect(button?.dataset["reseed"]).toBe("a0042");
  });

  it("escapes hostile titles", () => {
    const host = parse(renderItem(item({ title: `<img src=x onerror=alert(1)>` })));
    expect(host.querySelector("img")).toBeNull();
    expect(host.querySelector(".rec-title")?.textContent).toContain("<img");
  });

  it("falls back to the article id when the title is null", () => {
    const host = parse(renderItem(item({ title: null })));
    expect(host.querySelector(".rec-title")?.textContent).toBe("a0001");
  });

  it("renders the similarity badge from the payload value", () => {
    const same = parse(renderItem(item({ seed_journal_similarity: 1 })));
    expect(same.querySelector(".badge-same")?.textContent).toBe("1.000");
    const missing = parse(renderItem(item({ seed_journal_similarity: null })));
    expect(missing.querySelector(".badge-none")?.textContent).toBe("n/a");
  });
});

describe("renderColumn", () => {
  it("preserves payload order even when scores are not monotone", () => {
    // a correct UI must not sort; the payload order is the contract
    const scrambled = [
      item({ article: "low", rank: 1, score: 0.1 }),
      item({ article: "high", rank: 2, score: 0.9 }),
      item({ article: "mid", rank: 3, score: 0.5 }),
    ];
    const host = parse(renderColumn("citation", scrambled));
    const ids = [...host.querySelectorAll<HTMLElement>("li.rec")].map(
      (li) => li.dataset["article"]
    );
    expect(ids).toEqual(["low", "high", "mid"]);
    const ranks = [...host.querySelectorAll(".rank")].map((el) => el.textContent);
    expect(ranks).toEqual(["1", "2", "3"]);
  });

  it("never filters items", () => {
    const items = Array.from({ length: 20 }, (_, i) =>
      item({ article: `a${i}`, rank: i + 1 })
    );
    const host = parse(renderColumn("usage", items));
    expect(host.querySelectorAll("li.rec").length).toBe(20);
  });

  it("shows an explicit empty state", () => {
    const host = parse(renderColumn("usage", []));
    const column = host.querySelector<HTMLElement>("section.column");
    expect(column?.dataset["engine"]).toBe("usage");
    expect(column?.querySelector(".empty")?.textContent).toBe("no recommendations");
    expect(column?.querySelector("ol.recs")).toBeNull();
  });
});

describe("renderBanner", () => {
  it.each([
    ["citation", "citation suggestions are more diverse"],
    ["usage", "usage suggestions are more diverse"],
    ["tie", "both engines equally diverse"],
    ["zero-both", "every suggestion stays in the seed's journal"],
    ["incomparable", "diversity not scorable for this seed"],
  ] as const)("labels the %s verdict", (winner, text) => {
    const host = parse(renderBanner(comparison({ winner })));
    const banner = host.querySelector<HTMLElement>(".banner");
    expect(banner?.dataset["winner"]).toBe(winner);
    expect(banner?.querySelector(".verdict")?.textContent).toBe(text);
  });

  it("explains a missing verdict", () => {
    const host = parse(
      renderBanner(comparison({ winner: null, mean_similarity_usage: null }))
    );
    const banner = host.querySelector<HTMLElement>(".banner");
    expect(banner?.dataset["winner"]).toBe("none");
    expect(banner?.textContent).toContain("needs results from both engines");
    expect(banner?.querySelector(".means")?.textContent).toContain("usage n/a");
  });

  it("prints both means from the payload", () => {
    const host = parse(renderBanner(comparison()));
    expect(host.querySelector(".means")?.textContent).toBe(
      "mean seed-journal similarity: citation 0.610, usage 0.980"
    );
  });
});

describe("renderComparison", () => {
  it("renders the seed header and both engine columns", () => {
    const host = parse(renderComparison(comparison()));
    const article = host.querySelector<HTMLElement>("article.comparison");
    expect(article?.dataset["seed"]).toBe("a0009");
    expect(article?.dataset["n"]).toBe("10");
    expect(host.querySelector("h1")?.textContent).toBe("Study a0009 (t0-j1)");
    expect(host.querySelector('[data-engine="citation"]')).not.toBeNull();
    expect(host.querySelector('[data-engine="usage"]')).not.toBeNull();
  });

  it("handles a one-sided payload with one empty state", () => {
    const host = parse(renderComparison(comparison({ usage: [], winner: null })));
    expect(
      host.querySelector('[data-engine="citation"] ol.recs')
    ).not.toBeNull();
    expect(
      host.querySelector('[data-engine="usage"] .empty')?.textContent
    ).toBe("no recommendations");
  });
});

describe("renderTrail", () => {
  it("lists visits in order and marks the latest", () => {
    const host = parse(
      renderTrail([
        { seed: "a0001", at: 0 },
        { seed: "a0002", at: 61_000 },
        { seed: "a0001", at: 122_000 },
      ])
    );
    const items = [...host.querySelectorAll("li")];
    expect(items.map((li) => li.querySelector(".trail-seed")?.textContent)).toEqual(
      ["a0001", "a0002", "a0001"]
    );
    expect(items.map((li) => li.classList.contains("active"))).toEqual([
      false,
      false,
      true,
    ]);
    expect(items[1]?.querySelector(".trail-time")?.textContent).toBe("00:01:01");
  });

  it("has an empty message before the first visit", () => {
    expect(parse(renderTrail([])).textContent).toContain("no seeds visited yet");
  });
});

describe("renderError", () => {
  it("gives unknown seeds a hint", () => {
    const host = parse(
      renderError(new ApiError(404, "unknown_seed", "unknown seed article: 'zz'"))
    );
    const box = host.querySelector<HTMLElement>(".error");
    expect(box?.dataset["code"]).toBe("unknown_seed");
    expect(box?.textContent).toContain("pick another seed");
  });

  it("shows the service envelope for other api errors", () => {
    const host = parse(
      renderError(new ApiError(400, "bad_request", "n must be between 1 and 100"))
    );
    const box = host.querySelector<HTMLElement>(".error");
    expect(box?.dataset["code"]).toBe("bad_request");
    expect(box?.textContent).toContain("n must be between 1 and 100");
  });

  it("degrades sanely for transport failures", () => {
    const host = parse(renderError(new TypeError("fetch failed")));
    const box = host.querySelector<HTMLElement>(".error");
    expect(box?.dataset["code"]).toBe("network");
    expect(box?.textContent).toContain("service unreachable");
  });
});
