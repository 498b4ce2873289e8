import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderCheckResult,
  renderDetail,
  renderEmptyQueue,
  renderHighlighted,
  renderQueueRows,
} from "../src/render.js";
import { makeRecord } from "./helpers.js";
import type { ExtractionResultDto } from "../src/types.js";

describe("renderQueueRows", () => {
  it("mirrors the service payload verbatim: one row per record", () => {
    const records = [makeRecord(), makeRecord({ curation: { decision: "accepted", edited_text: null, actor: "c", decided_at: "t", version: 2 } })];
    records[1].statement.id = "s2";
    const html = renderQueueRows(records);
    expect(html.match(/<tr /g)?.length).toBe(2);
    expect(html).toContain('data-id="s1"');
    expect(html).toContain('data-id="s2"');
    expect(html).toContain("badge-pending");
    expect(html).toContain("badge-accepted");
    expect(html).toContain("repository_deposited");
    expect(html).toContain("0.64"); // server-sent confidence, not recomputed
    expect(html).toContain("10.5281/zenodo.1");
  });

  it("shows edited text when the record is edited", () => {
    const record = makeRecord({
      curation: { decision: "edited", edited_text: "Curator fixed text", actor: "c", decided_at: "t", version: 3 },
    });
    expect(renderQueueRows([record])).toContain("Curator fixed text");
  });

  it("escapes markup in statement text", () => {
    const record = makeRecord();
    record.statement.text = 'Data <script>alert("x")</script> & more';
    const html = renderQueueRows([record]);
    expect(html).not.toContain("<script>alert");
    expect(html).toContain("&lt;script&gt;");
  });

  it("renders a guidance row when empty", () => {
    expect(renderEmptyQueue(false)).toContain("No statements yet");
    expect(renderEmptyQueue(true)).toContain("match the current filters");
  });
});

describe("renderHighlighted", () => {
  it("marks exactly the server-provided span", () => {
    const html = renderHighlighted("before STATEMENT after", 7, 16);
    expect(html).toBe("before <mark>STATEMENT</mark> after");
  });

  it("escapes html on both sides of the mark", () => {
    const html = renderHighlighted("<b>x</b> mid <i>y</i>", 9, 12);
    expect(html).toBe("&lt;b&gt;x&lt;/b&gt; <mark>mid</mark> &lt;i&gt;y&lt;/i&gt;");
  });

  it("clamps out-of-range offsets", () => {
    expect(renderHighlighted("abc", -5, 99)).toBe("<mark>abc</mark>");
  });
});

describe("renderDetail", () => {
  it("shows version, badges, and highlighted context", () => {
    const statement = "The data are openly available in Zenodo.";
    const contextText = `intro ${statement} outro`;
    const record = makeRecord({
      context: {
        text: contextText,
        statement_start: contextText.indexOf(statement),
        statement_end: contextText.indexOf(statement) + statement.length,
      },
    });
    const html = renderDetail(record);
    expect(html).toContain('data-version="1"');
    expect(html).toContain("<mark>The data are openly available in Zenodo.</mark>");
    expect(html).toContain("https://doi.org/10.5281/zenodo.1");
  });

  it("prefers edited text in the statement block", () => {
    const record = makeRecord({
      curation: { decision: "edited", edited_text: "Edited!", actor: "c", decided_at: "t", version: 2 },
    });
    expect(renderDetail(record)).toContain("Edited!");
  });
});

describe("renderCheckResult", () => {
  const base: ExtractionResultDto = {
    document_id: "d",
    prefilter: { document_id: "d", score: 10, matched: [] },
    passed_prefilter: true,
    statements: [],
    config_fingerprint: "f",
  };

  it("renders the not-found state for empty results", () => {
    expect(renderCheckResult(base)).toContain("No data access statement found");
  });

  it("marks found statements as not saved, with highlight and links", () => {
    const result = {
      ...base,
      statements: [makeRecord().statement],
    };
    const html = renderCheckResult(result);
    expect(html).toContain("not saved");
    expect(html).toContain("<mark>");
    expect(html).toContain("10.5281/zenodo.1");
  });
});

describe("escapeHtml", () => {
  it("escapes the five specials", () => {
    expect(escapeHtml(`<a href="x">'&'</a>`)).toBe(
      "&lt;a href=&quot;x&quot;&gt;&#39;&amp;&#39;&lt;/a&gt;",
    );
  });
});
