/** Pure HTML renderers. Everything shown is a verbatim service response field;
 * highlighting slices the server-provided context by the server-provided span. */

import type {
  ExtractionResultDto,
  LinkDto,
  StatementDto,
  StatementRecordDto,
} from "./types.js";

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function preview(text: string, limit = 140): string {
  const flat = text.replace(/\s+/g, " ").trim();
  return flat.length <= limit ? flat : flat.slice(0, limit - 1) + "…";
}

function linkHref(link: LinkDto): string {
  if (link.kind === "doi") return `https://doi.org/${link.canonical}`;
  if (link.kind === "url") return link.canonical;
  return "";
}

export function renderLinks(links: LinkDto[]): string {
  if (!links.length) return '<span class="muted">none</span>';
  return links
    .map((link) => {
      const label = escapeHtml(link.canonical);
      const href = linkHref(link);
      return href
        ? `<a href="${escapeHtml(href)}" target="_blank" rel="noopener">${label}</a>`
        : `<span class="accession">${label}</span>`;
    })
    .join(", ");
}

export function decisionBadge(decision: string): string {
  return `<span class="badge badge-${escapeHtml(decision)}">${escapeHtml(decision)}</span>`;
}

export function categoryBadge(category: string): string {
  return `<span class="category">${escapeHtml(category)}</span>`;
}

export function renderQueueRows(items: StatementRecordDto[]): string {
  return items
    .map((record) => {
      const s = record.statement;
      const shown = record.curation.decision === "edited" && record.curation.edited_text
        ? record.curation.edited_text
        : s.text;
      return (
        `<tr data-id="${escapeHtml(s.id)}">` +
        `<td class="stmt">${escapeHtml(preview(shown))}</td>` +
        `<td>${categoryBadge(s.category)}</td>` +
        `<td class="num">${s.confidence.toFixed(2)}</td>` +
        `<td>${renderLinks(s.links)}</td>` +
        `<td>${decisionBadge(record.curation.decision)}</td>` +
        `</tr>`
      );
    })
    .join("");
}

export function renderEmptyQueue(filtered: boolean): string {
  const hint = filtered
    ? "No statements match the current filters. Clear them to see the whole queue."
    : "No statements yet. Submit documents through the API or the upload panel.";
  return `<tr><td colspan="5" class="empty-state">${hint}</td></tr>`;
}

/** Wrap the statement span of server-provided context in a <mark>. */
export function renderHighlighted(text: string, start: number, end: number): string {
  const lo = Math.max(0, Math.min(start, text.length));
  const hi = Math.max(lo, Math.min(end, text.length));
  return (
    escapeHtml(text.slice(0, lo)) +
    "<mark>" + escapeHtml(text.slice(lo, hi)) + "</mark>" +
    escapeHtml(text.slice(hi))
  );
}

export function renderDetail(record: StatementRecordDto): string {
  const s = record.statement;
  const curation = record.curation;
  const shownText = curation.decision === "edited" && curation.edited_text
    ? curation.edited_text
    : s.text;
  const context = record.context
    ? `<pre class="context">${renderHighlighted(
        record.context.text, record.context.statement_start, record.context.statement_end,
      )}</pre>`
    : `<pre class="context"><mark>${escapeHtml(s.text)}</mark></pre>`;
  const title = record.document_metadata.title ?? record.statement.document_id.slice(0, 12);
  return `
    <div class="detail-head">
      <h2>${escapeHtml(title)}</h2>
      ${categoryBadge(s.category)} ${decisionBadge(curation.decision)}
      <span class="version" data-version="${curation.version}">v${curation.version}</span>
      <span class="muted">score ${s.score}, confidence ${s.confidence.toFixed(2)}</span>
    </div>
    <h3>Statement</h3>
    <blockquote class="stmt-text">${escapeHtml(shownText)}</blockquote>
    <h3>In context</h3>
    ${context}
    <h3>Links</h3>
    <p>${renderLinks(s.links)}</p>`;
}

export function renderCheckResult(result: ExtractionResultDto): string {
  if (!result.statements.length) {
    return '<p class="empty-state">No data access statement found in this document.</p>';
  }
  const blocks = result.statements
    .map((s: StatementDto) =>
      `<div class="check-statement">` +
      `${categoryBadge(s.category)} <span class="muted">score ${s.score}, ` +
      `confidence ${s.confidence.toFixed(2)}</span>` +
      `<blockquote class="stmt-text"><mark>${escapeHtml(s.text)}</mark></blockquote>` +
      `<p>${renderLinks(s.links)}</p></div>`,
    )
    .join("");
  return `<p class="notice">Found ${result.statements.length} statement(s) — not saved.</p>${blocks}`;
}

export function renderBanner(message: string, retryable: boolean): string {
  return (
    `<div class="banner error"><span>${escapeHtml(message)}</span>` +
    (retryable ? '<button type="button" data-action="retry">Retry</button>' : "") +
    `</div>`
  );
}

export function renderConflictPrompt(): string {
  return (
    '<div class="banner conflict">This record changed in another session. ' +
    '<button type="button" data-action="reload-record">Reload it</button> before deciding.</div>'
  );
}
