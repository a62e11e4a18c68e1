export const COLUMNS = [
  "ID", "FORM", "LEMMA", "UPOS", "XPOS",
  "FEATS", "HEAD", "DEPREL", "DEPS", "MISC",
] as const;

export type ColumnName = (typeof COLUMNS)[number];

export type TokenRow = Record<string, string>;

export interface Diagnostic {
  code: string;
  severity: string;
  sentence: number;
  token: number | null;
  message: string;
}

export interface Span {
  start: number;
  end: number;
  form: string;
}

export interface LayoutToken {
  id: number;
  form: string;
  upos: string;
}

export interface ArcSpec {
  head: number;
  dep: number;
  label: string;
  height: number;
}

export interface GraphLayout {
  tokens: LayoutToken[];
  arcs: ArcSpec[];
}

export interface SentencePayload {
  index: number;
  comments: string[];
  spans: Span[];
  tokens: TokenRow[];
  diagnostics: Diagnostic[];
  layout: GraphLayout;
}

export interface DocumentInfo {
  path: string;
  sentence_count: number;
  dirty: boolean;
}

export interface VocabResponse {
  candidates: string[];
  auto_fill: string | null;
}

export interface ChangeRecordView {
  id: number;
  sentence: number;
  token: number;
  kind: string;
  rule: string;
  confidence: string;
  field?: string;
  old?: string;
  new?: string;
  note?: string;
}
