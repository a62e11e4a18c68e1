import { describe, expect, it } from "vitest";

import { BINDINGS, helpLines, resolveShortcut } from "../src/shortcuts";

describe("keyboard shortcuts", () => {
  it("maps Ctrl+S to save", () => {
    expect(resolveShortcut({ key: "s", ctrlKey: true })).toBe("save");
  });

  it("maps Ctrl+Z to undo and Tab to next-cell", () => {
    expect(resolveShortcut({ key: "z", ctrlKey: true })).toBe("undo");
    expect(resolveShortcut({ key: "Tab" })).toBe("next-cell");
    expect(resolveShortcut({ key: "Tab", shiftKey: true })).toBe("prev-cell");
  });

  it("ignores unbound strokes", () => {
    expect(resolveShortcut({ key: "q" })).toBeNull();
    expect(resolveShortcut({ key: "s" })).toBeNull();
  });

  it("covers every required action", () => {
    const actions = new Set(BINDINGS.map((b) => b.action));
    for (const required of [
      "save", "next-sentence", "prev-sentence", "next-cell", "prev-cell",
      "validate", "undo", "accept-suggestion", "column-filter",
    ]) {
      expect(actions.has(required as never)).toBe(true);
    }
  });

  it("lists every binding in the help panel", () => {
    const lines = helpLines();
    expect(lines).toHaveLength(BINDINGS.length);
    for (const binding of BINDINGS) {
      expect(lines.some((l) => l.includes(binding.combo))).toBe(true);
      expect(lines.some((l) => l.includes(binding.description))).toBe(true);
    }
  });
});
