/**
 * Wiring: DOM events in, rendered fragments out.
 *
 * All data flows through /compare. Selecting a seed appends to the trail;
 * concurrent selections resolve last-selected-wins; revisits are served
 * from the cache keyed by seed and n.
 */

import { ApiError, fetchCompare, fetchHealth } from "./api.js";
import { ExplorationTrail, ResultCache, SelectionGuard } from "./state.js";
import {
  renderComparison,
  renderError,
  renderLoading,
  renderTrail,
} from "./render.js";

export const DEFAULT_BASE = "http://127.0.0.1:8000";

export interface App {
  /** User picked a seed: append to the trail and show its comparison. */
  select(seed: string): Promise<void>;
  /** Result size changed: redisplay the current seed without a new visit. */
  refresh(): Promise<void>;
  currentSeed(): string | null;
  readonly trail: ExplorationTrail;
  readonly cache: ResultCache;
}

function requireElement<T extends Element>(root: Document, selector: string): T {
  const el = root.querySelector<T>(selector);
  if (!el) throw new Error(`missing element: ${selector}`);
  return el;
}

export function createApp(root: Document, base: string): App {
  const nSelect = requireElement<HTMLSelectElement>(root, "#n-select");
  const results = requireElement<HTMLElement>(root, "#results");
  const trailBox = requireElement<HTMLElement>(root, "#trail");

  const trail = new ExplorationTrail();
  const cache = new ResultCache();
  const guard = new SelectionGuard();
  let current: string | null = null;

  function readN(): number {
    const n = parseInt(nSelect.value, 10);
    return Number.isFinite(n) && n >= 1 ? n : 10;
  }

  async function show(seed: string, appendVisit: boolean): Promise<void> {
    const n = readN();
    if (appendVisit) trail.append(seed);
    current = seed;
    trailBox.innerHTML = renderTrail(trail.entries());
    const ticket = guard.begin();

    const cached = cache.get(seed, n);
    if (cached) {
      results.innerHTML = renderComparison(cached);
      return;
    }

    results.innerHTML = renderLoading(seed);
    try {
      const payload = await fetchCompare(base, seed, n);
      if (!guard.isCurrent(ticket)) return;
      cache.put(payload);
      results.innerHTML = renderComparison(payload);
    } catch (err) {
      if (!guard.isCurrent(ticket)) return;
      results.innerHTML = renderError(err);
    }
  }

  return {
    select: (seed) => show(seed, true),
    refresh: () => (current === null ? Promise.resolve() : show(current, false)),
    currentSeed: () => current,
    trail,
    cache,
  };
}

async function showHealth(root: Document, base: string): Promise<void> {
  const status = requireElement<HTMLElement>(root, "#status");
  try {
    const health = await fetchHealth(base);
    status.innerHTML =
      `connected to ${escapeText(base)}: ${health.articles} articles, ` +
      `${health.journals} journals, corpus <code>${escapeText(
        health.fingerprint.slice(0, 12)
      )}</code>`;
    status.classList.remove("down");
  } catch (err) {
    const detail =
      err instanceof ApiError ? err.message : "is the service running?";
    status.textContent = `no service at ${base} (${detail})`;
    status.classList.add("down");
  }
}

function escapeText(raw: string): string {
  return raw.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface BootOptions {
  base?: string;
}

export interface BootedApp extends App {
  /** Detach the document-level listener; for tests that boot repeatedly. */
  dispose(): void;
}

/** Attach the app to a document holding the index.html shell. */
export function boot(root: Document, options: BootOptions = {}): BootedApp {
  const view = root.defaultView;
  const params = new URLSearchParams(view ? view.location.search : "");
  const base = (options.base ?? params.get("service") ?? DEFAULT_BASE).replace(
    /\/+$/,
    ""
  );

  const app = createApp(root, base);
  const form = requireElement<HTMLFormElement>(root, "#seed-form");
  const input = requireElement<HTMLInputElement>(root, "#seed-input");
  const nSelect = requireElement<HTMLSelectElement>(root, "#n-select");

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const seed = input.value.trim();
    if (seed) void app.select(seed);
  });

  nSelect.addEventListener("change", () => {
    void app.refresh();
  });

  // one delegated handler covers recommendation clicks and trail revisits
  const onClick = (event: Event) => {
    const target = event.target as Element | null;
    const button = target?.closest<HTMLElement>("[data-reseed]");
    const seed = button?.dataset["reseed"];
    if (seed) {
      input.value = seed;
      void app.select(seed);
    }
  };
  root.addEventListener("click", onClick);

  void showHealth(root, base);
  return {
    ...app,
    dispose: () => root.removeEventListener("click", onClick),
  };
}
