import type { FetchLike } from "../src/api.js";
import type { StatementRecordDto } from "../src/types.js";

export interface RecordedCall {
  url: string;
  init?: RequestInit;
}

/** fetch stub that records calls and replays canned responses in order. */
export function fetchStub(
  responses: Array<{ status?: number; body: unknown }>,
): { fetchFn: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const queue = [...responses];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const next = queue.shift();
    if (!next) throw new Error(`unexpected fetch call: ${url}`);
    return new Response(JSON.stringify(next.body), {
      status: next.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

export function makeRecord(overrides: Partial<StatementRecordDto> = {}): StatementRecordDto {
  return {
    statement: {
      id: "s1",
      document_id: "d1",
      span: { start: 10, end: 42 },
      text: "The data are openly available in Zenodo.",
      category: "repository_deposited",
      links: [
        { kind: "doi", raw: "https://doi.org/10.5281/zenodo.1", canonical: "10.5281/zenodo.1", span: { start: 20, end: 40 } },
      ],
      score: 9,
      confidence: 0.6428571428571429,
      ...(overrides.statement ?? {}),
    },
    document_metadata: { title: "Sample Paper", origin: null },
    curation: {
      decision: "pending",
      edited_text: null,
      actor: null,
      decided_at: null,
      version: 1,
      ...(overrides.curation ?? {}),
    },
    created_at: "2025-01-01T00:00:00.000Z",
    ...overrides,
  };
}
