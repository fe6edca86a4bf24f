import { afterEach, describe, expect, it, vi } from "vitest";

import * as api from "../src/api.js";
import type { Paradigm } from "../src/types.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

const PARADIGM: Paradigm = {
  id: "demo",
  phenomenon: "test",
  source: "",
  good: [{ kind: "direct", literals: ["好"] }],
  bad: [{ kind: "direct", literals: ["坏"] }],
};

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("api", () => {
  it("preview posts the draft with n and seed", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ pairs: [], jsonl: "", report: { requested: 5, produced: 5, attempts: 5, rejections: {} } }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const resp = await api.preview(PARADIGM, 5, 42);
    expect(resp.report.produced).toBe(5);
    const [url, init] = fetchMock.mock.calls[0] as [string, RequestInit];
    expect(url).toBe("/api/preview");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body as string)).toEqual({ paradigm: PARADIGM, n: 5, seed: 42 });
  });

  it("saveParadigm carries the expected version", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ paradigm: PARADIGM, version: "v2" }),
    );
    vi.stubGlobal("fetch", fetchMock);
    await api.saveParadigm(PARADIGM, "v1");
    const [url, init] = fetchMock.mock.calls[0] as [string, RequestInit];
    expect(url).toBe("/api/paradigms/demo");
    expect(JSON.parse(init.body as string).expect_version).toBe("v1");
  });

  it("searchLexicon encodes constraints as query parameters", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ total: 0, entries: [] }));
    vi.stubGlobal("fetch", fetchMock);
    await api.searchLexicon({ pos: "NN", class: "person" }, 10);
    const [url] = fetchMock.mock.calls[0] as [string];
    const parsed = new URL(url, "http://localhost");
    expect(parsed.pathname).toBe("/api/lexicon/search");
    expect(parsed.searchParams.get("pos")).toBe("NN");
    expect(parsed.searchParams.get("class")).toBe("person");
    expect(parsed.searchParams.get("limit")).toBe("10");
  });

  it("rethrows service error envelopes with code and status", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse(
        { error: { code: "version_conflict", message: "changed on disk", details: {} } },
        409,
      ),
    );
    vi.stubGlobal("fetch", fetchMock);
    const err = await api.saveParadigm(PARADIGM, "stale").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(api.ServiceError);
    expect((err as api.ServiceError).code).toBe("version_conflict");
    expect((err as api.ServiceError).status).toBe(409);
    expect((err as api.ServiceError).message).toBe("changed on disk");
  });

  it("copes with non-envelope error bodies", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ detail: "boom" }, 500));
    vi.stubGlobal("fetch", fetchMock);
    const err = await api.listParadigms().catch((e: unknown) => e);
    expect((err as api.ServiceError).code).toBe("unknown");
    expect((err as api.ServiceError).status).toBe(500);
  });

  it("URL-encodes paradigm ids", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ paradigm: PARADIGM, version: "v" }),
    );
    vi.stubGlobal("fetch", fetchMock);
    await api.getParadigm("a/b");
    const [url] = fetchMock.mock.calls[0] as [string];
    expect(url).toBe("/api/paradigms/a%2Fb");
  });
});
