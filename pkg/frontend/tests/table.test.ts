import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api";
import { AnnotationTable } from "../src/table";
import { COLUMNS, type SentencePayload } from "../src/types";
import { Vocabulary } from "../src/vocab";

const payload: SentencePayload = JSON.parse(
  readFileSync(new URL("./fixtures/sentence_table6.json", import.meta.url), "utf-8"),
);
const lists = JSON.parse(
  readFileSync(new URL("./fixtures/vocab.json", import.meta.url), "utf-8"),
);

interface Call {
  url: string;
  init?: RequestInit;
}

function fakeService(calls: Call[], options: { failPatch?: boolean } = {}) {
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    if (url.endsWith("/document")) {
      return json({ path: "doc.conllu", sentence_count: 1, dirty: false });
    }
    if (url.includes("/token/")) {
      if (options.failPatch) throw new TypeError("fetch failed");
      const body = JSON.parse(String(init?.body));
      const edited = structuredClone(payload);
      const row = edited.tokens.find((t) => t.ID === url.split("/").pop());
      if (row) row[body.field] = body.value;
      return json(edited);
    }
    if (url.includes("/sentence/")) return json(payload);
    return json({});
  };
  return new ServiceClient("", fetchFn);
}

function json(data: unknown): Response {
  return new Response(JSON.stringify(data), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}

async function openTable(calls: Call[] = [], options = {}) {
  const table = new AnnotationTable(fakeService(calls, options), new Vocabulary(lists));
  await table.open();
  return table;
}

describe("cell display", () => {
  it("shows every cell byte-equal to the service payload", async () => {
    const table = await openTable();
    for (const row of payload.tokens) {
      for (const column of COLUMNS) {
        expect(table.cellText(Number(row.ID), column)).toBe(row[column]);
      }
    }
  });

  it("filters columns by case-insensitive substring without losing data", async () => {
    const table = await openTable();
    table.filterText = "po";
    expect(table.visibleColumns()).toEqual(["UPOS", "XPOS"]);
    table.filterText = "";
    expect(table.visibleColumns()).toEqual([...COLUMNS]);
    expect(table.cellText(1, "FEATS")).toBe(payload.tokens[0].FEATS);
  });
});

describe("editing", () => {
  it("blocks committing an out-of-vocabulary UPOS", async () => {
    const calls: Call[] = [];
    const table = await openTable(calls);
    const patchesBefore = calls.filter((c) => c.url.includes("/token/")).length;
    const result = await table.commitEdit(1, "UPOS", "NOUNN");
    expect(result.committed).toBe(false);
    expect(result.reason).toContain("NOUNN");
    expect(calls.filter((c) => c.url.includes("/token/")).length).toBe(patchesBefore);
    expect(table.candidates("UPOS", "NOUNN")).toEqual([]);
  });

  it("auto-fills a unique prefix before the PATCH", async () => {
    const calls: Call[] = [];
    const table = await openTable(calls);
    const result = await table.commitEdit(2, "DEPREL", "dep:d");
    expect(result).toMatchObject({ committed: true, value: "dep:der" });
    const patch = calls.find((c) => c.url.includes("/token/2"));
    expect(JSON.parse(String(patch?.init?.body))).toEqual({
      field: "DEPREL",
      value: "dep:der",
    });
    expect(table.dirty).toBe(true);
  });

  it("accepts free text in open fields", async () => {
    const table = await openTable();
    const result = await table.commitEdit(1, "LEMMA", "whatever");
    expect(result.committed).toBe(true);
    expect(table.cellText(1, "LEMMA")).toBe("whatever");
  });

  it("keeps the input buffered when the service is unreachable", async () => {
    const table = await openTable([], { failPatch: true });
    const result = await table.commitEdit(1, "LEMMA", "precious");
    expect(result.committed).toBe(false);
    expect(result.buffered).toBe(true);
    expect(table.buffer).toBe("precious");
    expect(table.banner).toContain("edit not saved");
  });
});

describe("navigation and title", () => {
  it("next-sentence at the last sentence is a no-op", async () => {
    const table = await openTable();
    expect(table.sentenceIndex).toBe(0);
    await table.nextSentence();
    expect(table.sentenceIndex).toBe(0);
  });

  it("shows a dirty marker until save", async () => {
    const table = await openTable();
    expect(table.title()).toBe("sentence 1 / 1");
    await table.commitEdit(1, "LEMMA", "x");
    expect(table.title()).toBe("* sentence 1 / 1");
    await table.save();
    expect(table.title()).toBe("sentence 1 / 1");
  });

  it("walks cells row-major and clamps at the ends", async () => {
    const table = await openTable();
    table.moveFocus(1);
    expect(table.focus).toEqual({ tokenId: 1, field: "FORM" });
    table.moveFocus(-1);
    expect(table.focus).toEqual({ tokenId: 1, field: "FORM" });
    for (let i = 0; i < 99; i++) table.moveFocus(1);
    expect(table.focus).toEqual({ tokenId: 3, field: "MISC" });
  });
});
