/** Thin fetch wrappers over the authoring service.
 *
 * Every non-2xx response carries an {error: {code, message, details}}
 * envelope; it is rethrown as ServiceError so callers can branch on code
 * (e.g. version_conflict) without touching HTTP statuses.
 */

import type {
  ApiError,
  LexicalEntry,
  Paradigm,
  ParadigmEnvelope,
  ParadigmSummary,
  PreviewResponse,
  ScoreResponse,
  SearchResponse,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const body = await resp.json();
  if (!resp.ok) {
    const err = (body as { error?: ApiError }).error;
    throw new ServiceError(
      resp.status,
      err?.code ?? "unknown",
      err?.message ?? `request failed with status ${resp.status}`,
      err?.details ?? {},
    );
  }
  return body as T;
}

export function listParadigms(): Promise<{ paradigms: ParadigmSummary[] }> {
  return request("/api/paradigms");
}

export function getParadigm(id: string): Promise<ParadigmEnvelope> {
  return request(`/api/paradigms/${encodeURIComponent(id)}`);
}

export function saveParadigm(
  paradigm: Paradigm,
  expectVersion?: string,
): Promise<ParadigmEnvelope> {
  return request(`/api/paradigms/${encodeURIComponent(paradigm.id)}`, {
    method: "PUT",
    body: JSON.stringify({ paradigm, expect_version: expectVersion ?? null }),
  });
}

export function searchLexicon(
  constraints: Record<string, string>,
  limit = 50,
): Promise<SearchResponse> {
  const params = new URLSearchParams(constraints);
  params.set("limit", String(limit));
  return request(`/api/lexicon/search?${params.toString()}`);
}

export function addLexicalEntry(
  entry: LexicalEntry,
): Promise<{ entry: LexicalEntry; size: number }> {
  return request("/api/lexicon/entries", {
    method: "POST",
    body: JSON.stringify(entry),
  });
}

export function preview(
  paradigm: Paradigm,
  n: number,
  seed: number,
): Promise<PreviewResponse> {
  return request("/api/preview", {
    method: "POST",
    body: JSON.stringify({ paradigm, n, seed }),
  });
}

export function scorePreview(
  pairs: PreviewResponse["pairs"],
  order = 2,
): Promise<ScoreResponse> {
  return request("/api/preview/score", {
    method: "POST",
    body: JSON.stringify({ pairs, order }),
  });
}
