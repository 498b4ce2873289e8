/** Payload shapes returned by the /v1 curation service. */

export interface SpanDto {
  start: number;
  end: number;
}

export interface LinkDto {
  kind: "url" | "doi" | "accession";
  raw: string;
  canonical: string;
  span: SpanDto;
}

export interface StatementDto {
  id: string;
  document_id: string;
  span: SpanDto;
  text: string;
  category: string;
  links: LinkDto[];
  score: number;
  confidence: number;
}

export interface CurationDto {
  decision: "pending" | "accepted" | "rejected" | "edited";
  edited_text: string | null;
  actor: string | null;
  decided_at: string | null;
  version: number;
}

export interface StatementRecordDto {
  statement: StatementDto;
  document_metadata: { title: string | null; origin: string | null };
  curation: CurationDto;
  created_at: string;
  context?: ContextDto;
  audit?: AuditEntryDto[];
}

export interface ContextDto {
  text: string;
  statement_start: number;
  statement_end: number;
}

export interface AuditEntryDto {
  statement_id: string;
  from_decision: string;
  to_decision: string;
  actor: string;
  at: string;
}

export interface StatementPageDto {
  total: number;
  page: number;
  page_size: number;
  items: StatementRecordDto[];
}

export interface PrefilterDto {
  document_id: string;
  score: number;
  matched: { phrase: string; count: number; weight: number }[];
}

export interface ExtractionResultDto {
  document_id: string;
  prefilter: PrefilterDto;
  passed_prefilter: boolean;
  statements: StatementDto[];
  config_fingerprint: string;
}

export interface SubmitResponseDto {
  document_id: string;
  extraction: ExtractionResultDto;
  records: StatementRecordDto[];
}

export interface QueueFilter {
  category?: string;
  decision?: string;
  min_confidence?: number;
  document_id?: string;
}

export type DecisionName = CurationDto["decision"];
