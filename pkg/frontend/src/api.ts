import type {
  ChangeRecordView,
  Diagnostic,
  DocumentInfo,
  SentencePayload,
  VocabResponse,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

/** Thin typed wrapper over the annotation service HTTP API. */
export class ServiceClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  document(): Promise<DocumentInfo> {
    return this.request("GET", "/document");
  }

  sentence(index: number): Promise<SentencePayload> {
    return this.request("GET", `/sentence/${index}`);
  }

  patchToken(
    index: number,
    tokenId: number,
    field: string,
    value: string,
  ): Promise<SentencePayload> {
    return this.request("PATCH", `/sentence/${index}/token/${tokenId}`, {
      field,
      value,
    });
  }

  split(index: number, tokenId: number): Promise<SentencePayload> {
    return this.request("POST", `/sentence/${index}/split`, { token: tokenId });
  }

  undo(): Promise<unknown> {
    return this.request("POST", "/undo");
  }

  save(): Promise<{ saved: string; dirty: boolean }> {
    return this.request("POST", "/save");
  }

  vocab(field: string, prefix: string): Promise<VocabResponse> {
    const query = encodeURIComponent(prefix);
    return this.request("GET", `/vocab/${field}?prefix=${query}`);
  }

  validate(level: string): Promise<{ diagnostics: Diagnostic[] }> {
    return this.request("POST", "/validate", { level });
  }

  suggest(rules: string): Promise<{ records: ChangeRecordView[] }> {
    const query = encodeURIComponent(rules);
    return this.request("POST", `/suggest?rules=${query}`);
  }

  apply(recordIds: number[]): Promise<unknown> {
    return this.request("POST", "/apply", { records: recordIds });
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<any> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const data = await response.json();
    if (!response.ok) {
      throw new ServiceError(
        response.status,
        data.code ?? "unknown",
        data.message ?? response.statusText,
      );
    }
    return data;
  }
}
