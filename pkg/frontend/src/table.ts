import type { ServiceClient } from "./api";
import { COLUMNS, type ColumnName, type SentencePayload } from "./types";
import type { Vocabulary } from "./vocab";

export interface CellFocus {
  tokenId: number;
  field: ColumnName;
}

export interface EditResult {
  committed: boolean;
  value?: string;
  reason?: string;
  buffered?: boolean;
}

/**
 * View state for the annotation table of one document session. Cell
 * values are always taken verbatim from the latest service payload;
 * the client never normalizes annotation data.
 */
export class AnnotationTable {
  sentenceIndex = 0;
  sentenceCount = 0;
  filterText = "";
  focus: CellFocus | null = null;
  /** Pending input for the focused cell, kept on failed commits. */
  buffer: string | null = null;
  banner: string | null = null;
  dirty = false;
  payload: SentencePayload | null = null;

  constructor(
    private readonly client: ServiceClient,
    private readonly vocab: Vocabulary,
  ) {}

  async open(): Promise<void> {
    const info = await this.client.document();
    this.sentenceCount = info.sentence_count;
    this.dirty = info.dirty;
    await this.load(0);
  }

  async load(index: number): Promise<void> {
    this.payload = await this.client.sentence(index);
    this.sentenceIndex = index;
  }

  /** Columns whose name contains the filter text, case-insensitively. */
  visibleColumns(): ColumnName[] {
    const needle = this.filterText.toLowerCase();
    return COLUMNS.filter((name) => name.toLowerCase().includes(needle));
  }

  /** The displayed text of a cell: the payload value, byte for byte. */
  cellText(tokenId: number, field: ColumnName): string {
    const row = this.payload?.tokens.find((t) => t.ID === String(tokenId));
    if (!row) throw new Error(`no token ${tokenId}`);
    return row[field];
  }

  candidates(field: ColumnName, input: string): string[] {
    return this.vocab.candidates(field, input);
  }

  /**
   * Commit an edit. Closed-vocabulary fields block out-of-inventory
   * values; a unique prefix auto-fills to the full value first. A
   * network failure keeps the input in the buffer and raises a banner.
   */
  async commitEdit(
    tokenId: number,
    field: ColumnName,
    input: string,
  ): Promise<EditResult> {
    if (field === "ID") {
      return { committed: false, reason: "ID is not editable" };
    }
    const value = this.vocab.resolve(field, input);
    if (value === null) {
      this.buffer = input;
      return { committed: false, reason: `"${input}" is not in the ${field} vocabulary` };
    }
    try {
      this.payload = await this.client.patchToken(
        this.sentenceIndex, tokenId, field, value,
      );
      this.dirty = true;
      this.buffer = null;
      this.banner = null;
      return { committed: true, value };
    } catch (err) {
      this.buffer = input;
      this.banner = `edit not saved: ${(err as Error).message}`;
      return { committed: false, buffered: true, reason: this.banner };
    }
  }

  async undo(): Promise<void> {
    await this.client.undo();
    await this.load(this.sentenceIndex);
    const info = await this.client.document();
    this.dirty = info.dirty;
  }

  async save(): Promise<void> {
    await this.client.save();
    this.dirty = false;
  }

  /** Title-bar text with the dirty indicator. */
  title(): string {
    const marker = this.dirty ? "* " : "";
    return `${marker}sentence ${this.sentenceIndex + 1} / ${this.sentenceCount}`;
  }

  async nextSentence(): Promise<void> {
    if (this.sentenceIndex + 1 < this.sentenceCount) {
      await this.load(this.sentenceIndex + 1);
    }
  }

  async prevSentence(): Promise<void> {
    if (this.sentenceIndex > 0) {
      await this.load(this.sentenceIndex - 1);
    }
  }

  /** Move cell focus forward (delta +1) or back (-1), row-major. */
  moveFocus(delta: 1 | -1): void {
    if (!this.payload || this.payload.tokens.length === 0) return;
    const editable = COLUMNS.filter((c) => c !== "ID");
    const rows = this.payload.tokens.map((t) => Number(t.ID));
    if (!this.focus) {
      this.focus = { tokenId: rows[0], field: editable[0] };
      return;
    }
    const flat: CellFocus[] = [];
    for (const tokenId of rows) {
      for (const field of editable) flat.push({ tokenId, field });
    }
    const at = flat.findIndex(
      (c) => c.tokenId === this.focus!.tokenId && c.field === this.focus!.field,
    );
    const next = Math.min(Math.max(at + delta, 0), flat.length - 1);
    this.focus = flat[next];
  }
}
