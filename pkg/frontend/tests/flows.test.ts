import { describe, expect, it } from "vitest";

import { DastoolApi } from "../src/api.js";
import {
  MAX_UPLOAD_BYTES,
  submitCheckedDocument,
  submitDecision,
  uploadAndCheck,
} from "../src/flows.js";
import { fetchStub } from "./helpers.js";

describe("submitDecision", () => {
  it("returns ok with the new version", async () => {
    const { fetchFn, calls } = fetchStub([{ body: { decision: "accepted", version: 2 } }]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await submitDecision(api, "s1", "accepted", 1, "carol");
    expect(outcome).toEqual({ kind: "ok", version: 2, decision: "accepted" });
    expect(JSON.parse(String(calls[0].init?.body)).expected_version).toBe(1);
  });

  it("maps 409 to a conflict outcome (reload prompt, no overwrite)", async () => {
    const { fetchFn } = fetchStub([
      { status: 409, body: { error_code: "version_conflict", message: "stale" } },
    ]);
    const api = new DastoolApi("http://svc", fetchFn);
    expect(await submitDecision(api, "s1", "rejected", 1, "x")).toEqual({ kind: "conflict" });
  });

  it("maps 404 to a gone outcome", async () => {
    const { fetchFn } = fetchStub([
      { status: 404, body: { error_code: "not_found", message: "gone" } },
    ]);
    const api = new DastoolApi("http://svc", fetchFn);
    expect(await submitDecision(api, "s1", "accepted", 1, "x")).toEqual({ kind: "gone" });
  });

  it("blocks empty edited text before any request is sent", async () => {
    const { fetchFn, calls } = fetchStub([]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await submitDecision(api, "s1", "edited", 1, "x", "   ");
    expect(outcome.kind).toBe("invalid");
    expect(calls).toHaveLength(0);
  });
});

describe("uploadAndCheck", () => {
  const file = (name: string, content: string, size?: number) => ({
    name,
    size: size ?? content.length,
    text: async () => content,
  });

  it("rejects oversize files client-side without a request", async () => {
    const { fetchFn, calls } = fetchStub([]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await uploadAndCheck(api, file("big.txt", "x", MAX_UPLOAD_BYTES + 1));
    expect(outcome).toEqual({ kind: "too_large", limit: MAX_UPLOAD_BYTES });
    expect(calls).toHaveLength(0);
  });

  it("posts plain text files to /v1/check", async () => {
    const body = {
      document_id: "d", passed_prefilter: true, statements: [],
      prefilter: { document_id: "d", score: 0, matched: [] }, config_fingerprint: "f",
    };
    const { fetchFn, calls } = fetchStub([{ body }]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await uploadAndCheck(api, file("paper.txt", "Some text."));
    expect(outcome.kind).toBe("ok");
    expect(calls[0].url).toBe("http://svc/v1/check");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      format: "plain_text",
      content: "Some text.",
    });
  });

  it("parses .json uploads as sectioned documents", async () => {
    const body = {
      document_id: "d", passed_prefilter: false, statements: [],
      prefilter: { document_id: "d", score: 0, matched: [] }, config_fingerprint: "f",
    };
    const { fetchFn, calls } = fetchStub([{ body }]);
    const api = new DastoolApi("http://svc", fetchFn);
    const sectioned = JSON.stringify({ sections: [{ heading: null, body: "Text." }] });
    await uploadAndCheck(api, file("doc.json", sectioned));
    expect(JSON.parse(String(calls[0].init?.body)).format).toBe("sectioned");
  });

  it("surfaces server errors with the server message", async () => {
    const { fetchFn } = fetchStub([
      { status: 400, body: { error_code: "empty_document", message: "normalized text is empty" } },
    ]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await uploadAndCheck(api, file("empty.txt", " "));
    expect(outcome.kind).toBe("error");
    if (outcome.kind === "error") expect(outcome.message).toContain("normalized text is empty");
  });
});

describe("submitCheckedDocument", () => {
  it("posts the original content to /v1/documents", async () => {
    const { fetchFn, calls } = fetchStub([
      { status: 201, body: { document_id: "d", extraction: {}, records: [] } },
    ]);
    const api = new DastoolApi("http://svc", fetchFn);
    const outcome = await submitCheckedDocument(api, "plain_text", "Body text", "paper.txt");
    expect(outcome.kind).toBe("ok");
    expect(calls[0].url).toBe("http://svc/v1/documents");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      format: "plain_text",
      content: "Body text",
      metadata: { title: "paper.txt" },
    });
  });
});
