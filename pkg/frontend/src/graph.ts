import type { GraphLayout } from "./types";

const TOKEN_WIDTH = 90;
const TOKEN_BASELINE_PAD = 30;
const ARC_UNIT = 34;
const MARGIN = 20;

function xOf(tokenId: number): number {
  return MARGIN + (tokenId - 1) * TOKEN_WIDTH + TOKEN_WIDTH / 2;
}

function escape(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render a horizontal dependency graph as an SVG string. Pure function
 * of the layout payload: tokens left to right in id order, labeled
 * arcs above, the focused token's incoming arc highlighted.
 */
export function renderGraph(layout: GraphLayout, focusToken?: number): string {
  const maxHeight = layout.arcs.reduce((m, a) => Math.max(m, a.height), 0);
  const baseline = MARGIN + maxHeight * ARC_UNIT + TOKEN_BASELINE_PAD;
  const width = MARGIN * 2 + layout.tokens.length * TOKEN_WIDTH;
  const height = baseline + 40;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}">`,
  );

  for (const arc of layout.arcs) {
    const x1 = xOf(arc.head);
    const x2 = xOf(arc.dep);
    const top = baseline - arc.height * ARC_UNIT;
    const mid = (x1 + x2) / 2;
    const focused = arc.dep === focusToken;
    const cls = focused ? "arc focused" : "arc";
    parts.push(`<g class="${cls}" data-head="${arc.head}" data-dep="${arc.dep}">`);
    parts.push(
      `<path d="M ${x1} ${baseline - 24} C ${x1} ${top}, ${x2} ${top}, ` +
        `${x2} ${baseline - 24}" fill="none"/>`,
    );
    parts.push(
      `<text class="label" x="${mid}" y="${top - 4}" text-anchor="middle">` +
        `${escape(arc.label)}</text>`,
    );
    const tip = x2 > x1 ? -5 : 5;
    parts.push(
      `<path class="head" d="M ${x2 + tip} ${baseline - 30} L ${x2} ` +
        `${baseline - 24} L ${x2 + tip} ${baseline - 18}" fill="none"/>`,
    );
    parts.push("</g>");
  }

  for (const token of layout.tokens) {
    const x = xOf(token.id);
    parts.push(`<g class="token" data-id="${token.id}">`);
    parts.push(
      `<text class="form" x="${x}" y="${baseline}" text-anchor="middle">` +
        `${escape(token.form)}</text>`,
    );
    parts.push(
      `<text class="upos" x="${x}" y="${baseline + 18}" text-anchor="middle">` +
        `${escape(token.upos)}</text>`,
    );
    parts.push("</g>");
  }

  parts.push("</svg>");
  return parts.join("");
}
