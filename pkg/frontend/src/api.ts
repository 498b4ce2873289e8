/** Thin typed client for the /v1 endpoints. The dashboard never re-scores or
 * re-extracts anything; every displayed value comes back from these calls. */

import type {
  DecisionName,
  ExtractionResultDto,
  QueueFilter,
  StatementPageDto,
  StatementRecordDto,
  SubmitResponseDto,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function buildQuery(filter: QueueFilter, page?: number, pageSize?: number): string {
  const params = new URLSearchParams();
  if (filter.category) params.set("category", filter.category);
  if (filter.decision) params.set("decision", filter.decision);
  if (filter.min_confidence !== undefined && !Number.isNaN(filter.min_confidence)) {
    params.set("min_confidence", String(filter.min_confidence));
  }
  if (filter.document_id) params.set("document_id", filter.document_id);
  if (page !== undefined) params.set("page", String(page));
  if (pageSize !== undefined) params.set("page_size", String(pageSize));
  const encoded = params.toString();
  return encoded ? `?${encoded}` : "";
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "error";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error_code?: string; message?: string };
    code = body.error_code ?? code;
    message = body.message ?? message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message);
}

export class DastoolApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  listStatements(filter: QueueFilter, page: number, pageSize: number): Promise<StatementPageDto> {
    return this.request(`/v1/statements${buildQuery(filter, page, pageSize)}`);
  }

  getStatement(id: string): Promise<StatementRecordDto> {
    return this.request(`/v1/statements/${encodeURIComponent(id)}`);
  }

  decide(
    id: string,
    decision: DecisionName,
    expectedVersion: number,
    actor: string,
    editedText?: string,
  ): Promise<unknown> {
    return this.request(`/v1/statements/${encodeURIComponent(id)}/decision`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        decision,
        expected_version: expectedVersion,
        actor,
        ...(editedText !== undefined ? { edited_text: editedText } : {}),
      }),
    });
  }

  check(format: string, content: string | object): Promise<ExtractionResultDto> {
    return this.request("/v1/check", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ format, content }),
    });
  }

  submitDocument(
    format: string,
    content: string | object,
    metadata?: object,
  ): Promise<SubmitResponseDto> {
    return this.request("/v1/documents", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ format, content, metadata }),
    });
  }

  /** URL for the CSV download; must carry the exact current filter state. */
  exportCsvUrl(filter: QueueFilter): string {
    return `${this.baseUrl}/v1/export.csv${buildQuery(filter)}`;
  }
}
