import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { renderGraph } from "../src/graph";
import type { SentencePayload } from "../src/types";

function layoutOf(name: string) {
  const payload: SentencePayload = JSON.parse(
    readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8"),
  );
  return payload.layout;
}

function arcsIn(svg: string): string[] {
  return svg.match(/<g class="arc[^"]*"[^>]*>/g) ?? [];
}

describe("dependency graph rendering", () => {
  it("renders the split başındaki sentence with exactly 2 labeled arcs", () => {
    const layout = layoutOf("sentence_table6.json");
    const svg = renderGraph(layout);
    expect(arcsIn(svg)).toHaveLength(2);
    expect(svg).toContain(">dep:der</text>");
    expect(svg).toContain(">nmod</text>");
    // the dep:der arc attaches ki (token 2) to başında (token 1)
    expect(svg).toMatch(/<g class="arc" data-head="1" data-dep="2">/);
  });

  it("renders the seninki sentence with one nmod:poss arc senin→ki", () => {
    const layout = layoutOf("sentence_table8.json");
    const svg = renderGraph(layout);
    expect(arcsIn(svg)).toHaveLength(1);
    expect(svg).toContain(">nmod:poss</text>");
    expect(svg).toMatch(/<g class="arc" data-head="2" data-dep="1">/);
  });

  it("renders a single token as one box and no arcs", () => {
    const svg = renderGraph({
      tokens: [{ id: 1, form: "Evet", upos: "INTJ" }],
      arcs: [],
    });
    expect(arcsIn(svg)).toHaveLength(0);
    expect(svg.match(/<g class="token"/g)).toHaveLength(1);
    expect(svg).toContain(">Evet</text>");
  });

  it("is a pure function of the layout", () => {
    const layout = layoutOf("sentence_table6.json");
    expect(renderGraph(layout)).toBe(renderGraph(layout));
  });

  it("highlights the focused token's incoming arc", () => {
    const layout = layoutOf("sentence_table6.json");
    const svg = renderGraph(layout, 2);
    expect(svg).toMatch(/<g class="arc focused" data-head="1" data-dep="2">/);
    expect(svg.match(/arc focused/g)).toHaveLength(1);
  });

  it("keeps tokens in id order left to right", () => {
    const layout = layoutOf("sentence_table6.json");
    const svg = renderGraph(layout);
    const forms = [...svg.matchAll(/class="form" x="(\d+(?:\.\d+)?)"[^>]*>([^<]+)</g)];
    const ordered = forms
      .sort((a, b) => Number(a[1]) - Number(b[1]))
      .map((m) => m[2]);
    expect(ordered).toEqual(["başında", "ki", "şapkası"]);
  });
});
