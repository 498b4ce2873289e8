/** DOM wiring for the review dashboard. All data flows through DastoolApi;
 * rendering helpers live in render.ts and decision/upload logic in flows.ts. */

import { DastoolApi } from "./api.js";
import {
  submitCheckedDocument,
  submitDecision,
  uploadAndCheck,
  MAX_UPLOAD_BYTES,
} from "./flows.js";
import {
  renderBanner,
  renderCheckResult,
  renderConflictPrompt,
  renderDetail,
  renderEmptyQueue,
  renderQueueRows,
} from "./render.js";
import type { DecisionName, QueueFilter, StatementRecordDto } from "./types.js";

declare global {
  interface Window {
    DASTOOL_API_BASE?: string;
  }
}

const PAGE_SIZE = 25;

const api = new DastoolApi(window.DASTOOL_API_BASE ?? "");

const el = {
  banner: document.getElementById("banner") as HTMLElement,
  rows: document.getElementById("queue-rows") as HTMLElement,
  pageInfo: document.getElementById("page-info") as HTMLElement,
  prev: document.getElementById("page-prev") as HTMLButtonElement,
  next: document.getElementById("page-next") as HTMLButtonElement,
  category: document.getElementById("filter-category") as HTMLSelectElement,
  decision: document.getElementById("filter-decision") as HTMLSelectElement,
  minConfidence: document.getElementById("filter-confidence") as HTMLInputElement,
  csv: document.getElementById("download-csv") as HTMLButtonElement,
  refresh: document.getElementById("refresh") as HTMLButtonElement,
  detail: document.getElementById("detail") as HTMLElement,
  detailBody: document.getElementById("detail-body") as HTMLElement,
  detailControls: document.getElementById("detail-controls") as HTMLElement,
  editText: document.getElementById("edit-text") as HTMLTextAreaElement,
  actor: document.getElementById("actor") as HTMLInputElement,
  upload: document.getElementById("upload-input") as HTMLInputElement,
  uploadResult: document.getElementById("upload-result") as HTMLElement,
  uploadSubmit: document.getElementById("upload-submit") as HTMLButtonElement,
  uploadNote: document.getElementById("upload-note") as HTMLElement,
};

let state = {
  page: 1,
  total: 0,
  selected: null as StatementRecordDto | null,
  lastCheck: null as { format: string; content: string; name: string } | null,
};

function currentFilter(): QueueFilter {
  const filter: QueueFilter = {};
  if (el.category.value) filter.category = el.category.value;
  if (el.decision.value) filter.decision = el.decision.value;
  if (el.minConfidence.value !== "") {
    const value = Number(el.minConfidence.value);
    if (!Number.isNaN(value)) filter.min_confidence = value;
  }
  return filter;
}

function showBanner(message: string, retryable = true): void {
  el.banner.innerHTML = renderBanner(message, retryable);
  const retry = el.banner.querySelector<HTMLButtonElement>('[data-action="retry"]');
  retry?.addEventListener("click", () => {
    el.banner.innerHTML = "";
    void refreshQueue();
  });
}

async function refreshQueue(): Promise<void> {
  try {
    const filter = currentFilter();
    const page = await api.listStatements(filter, state.page, PAGE_SIZE);
    state.total = page.total;
    el.banner.innerHTML = "";
    el.rows.innerHTML = page.items.length
      ? renderQueueRows(page.items)
      : renderEmptyQueue(Boolean(filter.category || filter.decision || filter.min_confidence));
    const pages = Math.max(1, Math.ceil(page.total / PAGE_SIZE));
    el.pageInfo.textContent = `page ${page.page} of ${pages} (${page.total} statements)`;
    el.prev.disabled = page.page <= 1;
    el.next.disabled = page.page >= pages;
    for (const row of el.rows.querySelectorAll<HTMLTableRowElement>("tr[data-id]")) {
      row.addEventListener("click", () => void openDetail(row.dataset.id as string));
    }
  } catch (error) {
    el.rows.innerHTML = "";
    showBanner(
      `Cannot reach the curation service: ${error instanceof Error ? error.message : error}`,
    );
  }
}

async function openDetail(id: string): Promise<void> {
  try {
    const record = await api.getStatement(id);
    state.selected = record;
    el.detail.hidden = false;
    el.detailBody.innerHTML = renderDetail(record);
    el.editText.value = record.curation.edited_text ?? record.statement.text;
    el.detailControls.querySelectorAll("button").forEach((b) => (b.disabled = false));
  } catch (error) {
    showBanner(`Cannot load statement: ${error instanceof Error ? error.message : error}`, false);
  }
}

async function decideSelected(decision: DecisionName): Promise<void> {
  const record = state.selected;
  if (!record) return;
  const actor = el.actor.value.trim() || "dashboard";
  const editedText = decision === "edited" ? el.editText.value : undefined;
  const outcome = await submitDecision(
    api, record.statement.id, decision, record.curation.version, actor, editedText,
  );
  switch (outcome.kind) {
    case "ok": {
      // update badge and version in place; no full reload
      record.curation.decision = outcome.decision;
      record.curation.version = outcome.version;
      if (decision === "edited") record.curation.edited_text = editedText ?? null;
      el.detailBody.innerHTML = renderDetail(record);
      void refreshQueue();
      break;
    }
    case "conflict": {
      const prompt = document.createElement("div");
      prompt.innerHTML = renderConflictPrompt();
      el.detailBody.prepend(prompt);
      prompt
        .querySelector<HTMLButtonElement>('[data-action="reload-record"]')
        ?.addEventListener("click", () => void openDetail(record.statement.id));
      break;
    }
    case "gone": {
      el.detail.hidden = true;
      state.selected = null;
      showBanner("This statement no longer exists; the queue was refreshed.", false);
      void refreshQueue();
      break;
    }
    case "invalid": {
      el.uploadNote.textContent = "";
      window.alert(outcome.message);
      break;
    }
    case "error":
      showBanner(outcome.message, false);
  }
}

async function handleUpload(): Promise<void> {
  const file = el.upload.files?.[0];
  if (!file) return;
  const outcome = await uploadAndCheck(api, file);
  el.uploadSubmit.hidden = true;
  if (outcome.kind === "too_large") {
    el.uploadResult.innerHTML = "";
    el.uploadNote.textContent =
      `File is larger than the ${Math.round(MAX_UPLOAD_BYTES / 1024 / 1024)} MB upload limit.`;
    return;
  }
  if (outcome.kind === "error") {
    el.uploadResult.innerHTML = "";
    el.uploadNote.textContent = `Check failed: ${outcome.message}`;
    return;
  }
  el.uploadNote.textContent = "";
  el.uploadResult.innerHTML = renderCheckResult(outcome.result);
  state.lastCheck = { format: outcome.format, content: outcome.content, name: file.name };
  el.uploadSubmit.hidden = outcome.result.statements.length === 0;
}

async function submitChecked(): Promise<void> {
  if (!state.lastCheck) return;
  const { format, content, name } = state.lastCheck;
  const outcome = await submitCheckedDocument(api, format, content, name);
  if (outcome.kind === "ok") {
    el.uploadNote.textContent =
      `Submitted to the repository queue (${outcome.response.records.length} record(s)).`;
    el.uploadSubmit.hidden = true;
    void refreshQueue();
  } else {
    el.uploadNote.textContent = `Submission failed: ${outcome.message}`;
  }
}

function wire(): void {
  el.refresh.addEventListener("click", () => void refreshQueue());
  for (const control of [el.category, el.decision]) {
    control.addEventListener("change", () => {
      state.page = 1;
      void refreshQueue();
    });
  }
  el.minConfidence.addEventListener("change", () => {
    state.page = 1;
    void refreshQueue();
  });
  el.prev.addEventListener("click", () => {
    state.page = Math.max(1, state.page - 1);
    void refreshQueue();
  });
  el.next.addEventListener("click", () => {
    state.page += 1;
    void refreshQueue();
  });
  el.csv.addEventListener("click", () => {
    window.open(api.exportCsvUrl(currentFilter()), "_blank");
  });
  el.detailControls.querySelectorAll<HTMLButtonElement>("button[data-decision]").forEach((button) => {
    button.addEventListener("click", () =>
      void decideSelected(button.dataset.decision as DecisionName),
    );
  });
  el.upload.addEventListener("change", () => void handleUpload());
  el.uploadSubmit.addEventListener("click", () => void submitChecked());
  void refreshQueue();
}

wire();
