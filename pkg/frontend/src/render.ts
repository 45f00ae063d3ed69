/**
 * HTML fragment builders. Every function is pure: payload in, markup out.
 *
 * Two rules hold throughout. Items are rendered in payload order with the
 * payload's own rank field, never renumbered or filtered. Every number on
 * screen is formatted from a payload value, never recomputed client-side.
 */

import type { ComparePayload, RecommendationItem } from "./api.js";
import { ApiError } from "./api.js";
import type { TrailEntry } from "./state.js";

export function escapeHtml(raw: string): string {
  return raw
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatScore(value: number): string {
  return value.toFixed(4);
}

export function formatSimilarity(value: number | null): string {
  return value === null ? "n/a" : value.toFixed(3);
}

// clock time only; the trail is a within-session record
export function formatTime(epochMs: number): string {
  return new Date(epochMs).toISOString().slice(11, 19);
}

/**
 * Badge style for the seed-journal similarity. The service pins same-journal
 * pairs to exactly 1, so that case gets its own look, distinct from every
 * cross-journal value.
 */
export function badgeClass(similarity: number | null): string {
  if (similarity === null) return "badge badge-none";
  if (similarity === 1) return "badge badge-same";
  return "badge badge-cross";
}

export function renderItem(item: RecommendationItem): string {
  const title = item.title === null ? item.article : item.title;
  const journal = item.journal === null ? "journal unknown" : item.journal;
  const badge =
    `<span class="${badgeClass(item.seed_journal_similarity)}"` +
    ` title="seed-journal similarity">` +
    `${formatSimilarity(item.seed_journal_similarity)}</span>`;
  return (
    `<li class="rec" data-article="${escapeHtml(item.article)}">` +
    `<button type="button" class="reseed" data-reseed="${escapeHtml(item.article)}">` +
    `<span class="rank">${item.rank}</span>` +
    `<span class="rec-title">${escapeHtml(title)}</span>` +
    `</button>` +
    `<span class="rec-meta">` +
    `<span class="journal">${escapeHtml(journal)}</span> ${badge} ` +
    `<span class="score">score ${formatScore(item.score)}</span>` +
    `</span>` +
    `</li>`
  );
}

export function renderColumn(
  engine: "citation" | "usage",
  items: readonly RecommendationItem[]
): string {
  const heading = engine === "citation" ? "Citation engine" : "Usage engine";
  const body =
    items.length === 0
      ? `<p class="empty">no recommendations</p>`
      : `<ol class="recs">${items.map(renderItem).join("")}</ol>`;
  return (
    `<section class="column" data-engine="${engine}">` +
    `<h2>${heading}</h2>${body}</section>`
  );
}

const VERDICT_TEXT: Record<string, string> = {
  citation: "citation suggestions are more diverse",
  usage: "usage suggestions are more diverse",
  tie: "both engines equally diverse",
  "zero-both": "every suggestion stays in the seed's journal",
  incomparable: "diversity not scorable for this seed",
};

export function renderBanner(payload: ComparePayload): string {
  const verdict =
    payload.winner === null
      ? "diversity verdict needs results from both engines"
      : VERDICT_TEXT[payload.winner] ?? payload.winner;
  const cit = formatSimilarity(payload.mean_similarity_citation);
  const use = formatSimilarity(payload.mean_similarity_usage);
  return (
    `<div class="banner" data-winner="${payload.winner ?? "none"}">` +
    `<span class="verdict">${escapeHtml(verdict)}</span>` +
    `<span class="means">mean seed-journal similarity: ` +
    `citation ${cit}, usage ${use}</span>` +
    `</div>`
  );
}

export function renderComparison(payload: ComparePayload): string {
  const title = payload.seed_title === null ? payload.seed : payload.seed_title;
  const journal =
    payload.seed_journal === null ? "journal unknown" : payload.seed_journal;
  return (
    `<article class="comparison" data-seed="${escapeHtml(payload.seed)}" data-n="${payload.n}">` +
    `<header class="seed-header">` +
    `<h1>${escapeHtml(title)}</h1>` +
    `<p class="seed-meta"><code>${escapeHtml(payload.seed)}</code> in ` +
    `<span class="journal">${escapeHtml(journal)}</span>, top ${payload.n}</p>` +
    `</header>` +
    renderBanner(payload) +
    `<div class="columns">` +
    renderColumn("citation", payload.citation) +
    renderColumn("usage", payload.usage) +
    `</div>` +
    `</article>`
  );
}

export function renderTrail(entries: readonly TrailEntry[]): string {
  if (entries.length === 0) {
    return `<p class="empty">no seeds visited yet</p>`;
  }
  const items = entries
    .map((entry, i) => {
      const active = i === entries.length - 1 ? ` class="active"` : "";
      return (
        `<li${active}>` +
        `<button type="button" class="revisit" data-reseed="${escapeHtml(entry.seed)}">` +
        `<span class="trail-seed">${escapeHtml(entry.seed)}</span>` +
        `<span class="trail-time">${formatTime(entry.at)}</span>` +
        `</button>` +
        `</li>`
      );
    })
    .join("");
  return `<ol class="trail-list">${items}</ol>`;
}

export function renderLoading(seed: string): string {
  return `<p class="loading">comparing <code>${escapeHtml(seed)}</code>&hellip;</p>`;
}

export function renderError(err: unknown): string {
  if (err instanceof ApiError && err.code === "unknown_seed") {
    return (
      `<div class="error" data-code="unknown_seed">` +
      `<p>${escapeHtml(err.message)}</p>` +
      `<p class="hint">pick another seed id and try again</p>` +
      `</div>`
    );
  }
  if (err instanceof ApiError) {
    return (
      `<div class="error" data-code="${escapeHtml(err.code)}">` +
      `<p>${escapeHtml(err.message)}</p>` +
      `</div>`
    );
  }
  const message = err instanceof Error ? err.message : String(err);
  return (
    `<div class="error" data-code="network">` +
    `<p>service unreachable: ${escapeHtml(message)}</p>` +
    `</div>`
  );
}
