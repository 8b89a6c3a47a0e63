// Typed client for the postedit HTTP JSON API. Every state mutation the
// UI performs goes through one of these methods.

export interface TokenPayload {
  surface: string;
  start: number;
  end: number;
}

export interface HighlightPayload {
  start: number;
  end: number;
  provenance: "GlobalReplacement" | "DictionaryReplacement" | "TmReplacement";
  rule_id: string;
}

export interface SegmentPayload {
  id: string;
  text: string;
  origin_id: string | null;
  tokens: TokenPayload[];
  highlights: HighlightPayload[];
  bbox: [number, number, number, number] | null;
}

export interface WordLinks {
  source_id: string;
  target_id: string;
  links: [number, number][];
}

export interface PagePayload {
  index: number;
  status: string;
  source_render: string | null;
  source_segments: SegmentPayload[];
  target_segments: SegmentPayload[];
  sentence_links: [string, string][];
  word_links: WordLinks[];
  version: number;
}

export interface ProjectPayload {
  id: string;
  name: string;
  source_lang: string;
  target_lang: string;
  version: number;
  page_count: number;
  pages: { index: number; status: string }[];
  lexicons: string[];
}

export interface Rule {
  rule_id: string;
  find: string[];
  replace: string;
  provenance: string;
}

export type Scope = "CurrentPage" | "UneditedPages" | "AllPages";

export interface PreviewOccurrence {
  segment_id: string;
  span: [number, number];
  before_text: string;
  after_text: string;
  rule_id: string;
}

export interface PreviewReportPayload {
  pages: { page_index: number; occurrences: PreviewOccurrence[] }[];
  total_count: number;
}

export interface SuggestionPayload {
  segment_id: string;
  target_span: [number, number];
  current_text: string;
  proposed_text: string;
  alternatives: string[];
  source_term: string[];
  domain: string;
  source_span: [number, number];
}

export interface PageStatsPayload {
  page_index: number;
  edit_count: number;
  active_time_ms: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private token: string,
    private fetchFn: FetchLike = globalThis.fetch.bind(globalThis),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    raw?: BodyInit,
  ): Promise<T> {
    const headers: Record<string, string> = { "X-Auth-Token": this.token };
    let payload: BodyInit | undefined = raw;
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: payload,
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { detail?: unknown };
        if (parsed.detail !== undefined) detail = JSON.stringify(parsed.detail);
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    const contentType = response.headers.get("content-type") ?? "";
    if (contentType.includes("application/json")) {
      return (await response.json()) as T;
    }
    return (await response.text()) as unknown as T;
  }

  uploadProject(bundle: Uint8Array): Promise<ProjectPayload> {
    return this.request("POST", "/projects", undefined, bundle as BodyInit);
  }

  getProject(id: string): Promise<ProjectPayload> {
    return this.request("GET", `/projects/${id}`);
  }

  getPage(id: string, page: number): Promise<PagePayload> {
    return this.request("GET", `/projects/${id}/pages/${page}`);
  }

  renderUrl(id: string, page: number): string {
    return `${this.baseUrl}/projects/${id}/pages/${page}/render`;
  }

  putSegment(
    id: string,
    page: number,
    segmentId: string,
    newText: string,
    version: number,
  ): Promise<{ version: number }> {
    return this.request("PUT", `/projects/${id}/pages/${page}/segments/${segmentId}`, {
      new_text: newText,
      version,
    });
  }

  savePage(id: string, page: number): Promise<{ rules: Rule[]; version: number }> {
    return this.request("POST", `/projects/${id}/pages/${page}/save`);
  }

  previewReplace(
    id: string,
    rules: Rule[],
    scope: Scope,
    currentPage: number,
  ): Promise<PreviewReportPayload> {
    return this.request("POST", `/projects/${id}/replace/preview`, {
      rules,
      scope,
      current_page: currentPage,
    });
  }

  applyReplace(
    id: string,
    rules: Rule[],
    scope: Scope,
    currentPage: number,
  ): Promise<{ applied_count: number; version: number }> {
    return this.request("POST", `/projects/${id}/replace/apply`, {
      rules,
      scope,
      current_page: currentPage,
    });
  }

  getSuggestions(id: string, page: number): Promise<{ suggestions: SuggestionPayload[] }> {
    return this.request("GET", `/projects/${id}/pages/${page}/suggestions`);
  }

  applySuggestion(
    id: string,
    suggestion: SuggestionPayload,
    version: number,
  ): Promise<{ version: number }> {
    return this.request("POST", `/projects/${id}/suggestions/apply`, {
      ...suggestion,
      version,
    });
  }

  postStatus(id: string, page: number): Promise<{ status: string; version: number }> {
    return this.request("POST", `/projects/${id}/pages/${page}/status`, {});
  }

  postEvent(id: string, kind: string, page?: number, tsMs?: number): Promise<unknown> {
    return this.request("POST", `/projects/${id}/events`, {
      kind,
      page: page ?? null,
      ts_ms: tsMs ?? Date.now(),
    });
  }

  getSummary(id: string): Promise<{ pages: PageStatsPayload[] }> {
    return this.request("GET", `/projects/${id}/logs/summary`);
  }

  exportUrl(id: string, format: "PlainText" | "HTML" | "LaTeX"): string {
    return `${this.baseUrl}/projects/${id}/export?format=${format}`;
  }

  slp1(text: string): Promise<{ text: string }> {
    return this.request("POST", "/slp1", { text });
  }
}
