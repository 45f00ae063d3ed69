/**
 * Typed client for the read-only recommendation service.
 *
 * Every wire shape here mirrors the service JSON verbatim; nothing is
 * renamed, recomputed, or reordered on the way through.
 */

export interface RecommendationItem {
  article: string;
  title: string | null;
  journal: string | null;
  score: number;
  rank: number;
  seed_journal_similarity: number | null;
}

export type Verdict = "citation" | "usage" | "tie" | "zero-both" | "incomparable";

export interface ComparePayload {
  seed: string;
  seed_title: string | null;
  seed_journal: string | null;
  n: number;
  citation: RecommendationItem[];
  usage: RecommendationItem[];
  mean_similarity_citation: number | null;
  mean_similarity_usage: number | null;
  winner: Verdict | null;
}

export interface HealthPayload {
  status: string;
  fingerprint: string;
  articles: number;
  journals: number;
  citation_k: number | null;
  usage_k: number | null;
}

/** Non-200 response, carrying the service's {code, message} envelope. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let code = "http_error";
    let message = `request failed with status ${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.code === "string") code = body.code;
      if (body && typeof body.message === "string") message = body.message;
    } catch {
      // non-JSON error body; keep the fallback envelope
    }
    throw new ApiError(response.status, code, message);
  }
  return response.json() as Promise<T>;
}

export async function fetchHealth(base: string): Promise<HealthPayload> {
  return getJson<HealthPayload>(`${base}/healthz`);
}

export async function fetchCompare(
  base: string,
  seed: string,
  n: number
): Promise<ComparePayload> {
  const query = new URLSearchParams({ seed, n: String(n) });
  return getJson<ComparePayload>(`${base}/compare?${query}`);
}
