/** Controller logic kept free of DOM access so contract tests can drive it
 * against a mocked service. */

import { ApiError, DastoolApi } from "./api.js";
import type { DecisionName, ExtractionResultDto, SubmitResponseDto } from "./types.js";

export const MAX_UPLOAD_BYTES = 5 * 1024 * 1024;

export type DecisionOutcome =
  | { kind: "ok"; version: number; decision: DecisionName }
  | { kind: "conflict" }
  | { kind: "gone" }
  | { kind: "invalid"; message: string }
  | { kind: "error"; message: string };

export async function submitDecision(
  api: DastoolApi,
  statementId: string,
  decision: DecisionName,
  expectedVersion: number,
  actor: string,
  editedText?: string,
): Promise<DecisionOutcome> {
  if (decision === "edited" && (!editedText || !editedText.trim())) {
    // client-side gate: never send an edit without text
    return { kind: "invalid", message: "Edited text must not be empty." };
  }
  try {
    const curation = (await api.decide(
      statementId, decision, expectedVersion, actor, editedText,
    )) as { version: number; decision: DecisionName };
    return { kind: "ok", version: curation.version, decision: curation.decision };
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) return { kind: "conflict" };
    if (error instanceof ApiError && error.status === 404) return { kind: "gone" };
    return { kind: "error", message: error instanceof Error ? error.message : String(error) };
  }
}

export interface UploadFile {
  name: string;
  size: number;
  text(): Promise<string>;
}

export type CheckOutcome =
  | { kind: "ok"; result: ExtractionResultDto; content: string; format: string }
  | { kind: "too_large"; limit: number }
  | { kind: "error"; message: string };

function formatForFile(name: string): string {
  if (name.toLowerCase().endsWith(".json")) return "sectioned";
  return "plain_text";
}

/** Pre-deposit check: size-gate the file, post it to /v1/check, keep the
 * content around so "submit to repository queue" can reuse it verbatim. */
export async function uploadAndCheck(api: DastoolApi, file: UploadFile): Promise<CheckOutcome> {
  if (file.size > MAX_UPLOAD_BYTES) {
    return { kind: "too_large", limit: MAX_UPLOAD_BYTES };
  }
  const format = formatForFile(file.name);
  try {
    const text = await file.text();
    const content = format === "sectioned" ? (JSON.parse(text) as object) : text;
    const result = await api.check(format, content);
    return { kind: "ok", result, content: text, format };
  } catch (error) {
    return { kind: "error", message: error instanceof Error ? error.message : String(error) };
  }
}

export async function submitCheckedDocument(
  api: DastoolApi,
  format: string,
  rawContent: string,
  title?: string,
): Promise<{ kind: "ok"; response: SubmitResponseDto } | { kind: "error"; message: string }> {
  try {
    const content = format === "sectioned" ? (JSON.parse(rawContent) as object) : rawContent;
    const response = await api.submitDocument(format, content, title ? { title } : undefined);
    return { kind: "ok", response };
  } catch (error) {
    return { kind: "error", message: error instanceof Error ? error.message : String(error) };
  }
}
