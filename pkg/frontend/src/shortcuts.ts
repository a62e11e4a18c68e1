export type Action =
  | "save"
  | "next-sentence"
  | "prev-sentence"
  | "next-cell"
  | "prev-cell"
  | "validate"
  | "undo"
  | "accept-suggestion"
  | "column-filter"
  | "help";

export interface Binding {
  combo: string;
  action: Action;
  description: string;
}

export const BINDINGS: Binding[] = [
  { combo: "Ctrl+S", action: "save", description: "Save the document to disk" },
  { combo: "Ctrl+ArrowDown", action: "next-sentence", description: "Go to the next sentence" },
  { combo: "Ctrl+ArrowUp", action: "prev-sentence", description: "Go to the previous sentence" },
  { combo: "Tab", action: "next-cell", description: "Focus the next table cell" },
  { combo: "Shift+Tab", action: "prev-cell", description: "Focus the previous table cell" },
  { combo: "Ctrl+Shift+V", action: "validate", description: "Validate the whole document" },
  { combo: "Ctrl+Z", action: "undo", description: "Undo the last edit or split" },
  { combo: "Ctrl+Enter", action: "accept-suggestion", description: "Accept the selected rule suggestion" },
  { combo: "Ctrl+F", action: "column-filter", description: "Focus the column filter box" },
  { combo: "F1", action: "help", description: "Show this shortcut list" },
];

export interface KeyStroke {
  key: string;
  ctrlKey?: boolean;
  shiftKey?: boolean;
  altKey?: boolean;
}

function comboOf(stroke: KeyStroke): string {
  const parts: string[] = [];
  if (stroke.ctrlKey) parts.push("Ctrl");
  if (stroke.shiftKey) parts.push("Shift");
  if (stroke.altKey) parts.push("Alt");
  parts.push(stroke.key.length === 1 ? stroke.key.toUpperCase() : stroke.key);
  return parts.join("+");
}

export function resolveShortcut(stroke: KeyStroke): Action | null {
  const combo = comboOf(stroke);
  const hit = BINDINGS.find((b) => b.combo === combo);
  return hit ? hit.action : null;
}

/** Lines for the in-app help panel, one binding per line. */
export function helpLines(): string[] {
  return BINDINGS.map((b) => `${b.combo.padEnd(16)}${b.description}`);
}
