// Typed client for the session API. Every analysis lives in one server-side
// session; stages build on each other and the server answers 409 StageError
// when a step is attempted out of order.

export interface StageFlags {
  rus: boolean;
  usecase: boolean;
  extracted: boolean;
  typed: boolean;
  ontology: boolean;
}

export interface SessionRef {
  id: string;
  stages: StageFlags;
}

export interface RuleIssue {
  code: string;
  message: string;
  line: number;
}

export type RulesResult =
  | { ok: true; rules: number }
  | { ok: false; errors: RuleIssue[] };

export interface LineResult {
  line: number;
  ok: boolean;
  error?: RuleIssue;
}

export interface StepsResult {
  ok: boolean;
  results: LineResult[];
}

export interface EntityLists {
  relations: string[];
  individuals: string[];
  data_properties: string[];
  types: string[];
}

export interface ExtractResult {
  entities: EntityLists;
  tuples: string[];
}

export interface TypesReport {
  ok: boolean;
  untyped: string[];
  unknown: string[];
  warnings: string[];
}

export interface OntologyResult {
  prefix: string;
  triples: number;
  manchester: string;
}

export type QueryResult =
  | { form: 'ask'; result: boolean }
  | { form: 'select'; variables: string[]; rows: string[][] };

export interface PatternVerdict {
  pattern: string;
  matched: boolean;
}

export interface SessionState {
  id: string;
  stages: StageFlags;
  rus_text?: string;
  lines?: { line: number; role: string; text: string }[];
  line_results?: LineResult[];
  entities?: EntityLists;
  tuples?: string[];
  types_report?: TypesReport;
  base?: string;
  prefix?: string;
  manchester?: string;
  triples?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: Record<string, unknown> = {}
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export interface Api {
  createSession(): Promise<SessionRef>;
  getSession(id: string): Promise<SessionState>;
  setRules(id: string, text: string): Promise<RulesResult>;
  setSteps(id: string, text: string): Promise<StepsResult>;
  extract(id: string): Promise<ExtractResult>;
  setTypes(id: string, text: string): Promise<TypesReport>;
  buildOntology(id: string, base?: string, permissive?: boolean): Promise<OntologyResult>;
  runQuery(id: string, query: string): Promise<QueryResult>;
  matchPatterns(id: string): Promise<PatternVerdict[]>;
}

export class ApiClient implements Api {
  constructor(private readonly base = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = await res.json().catch(() => null);
    if (!res.ok) {
      const err = (data as { error?: Record<string, unknown> } | null)?.error ?? {};
      throw new ApiError(
        res.status,
        typeof err.code === 'string' ? err.code : 'HttpError',
        typeof err.message === 'string' ? err.message : `HTTP ${res.status}`,
        err
      );
    }
    return data as T;
  }

  createSession(): Promise<SessionRef> {
    return this.request('POST', '/api/sessions');
  }

  getSession(id: string): Promise<SessionState> {
    return this.request('GET', `/api/sessions/${id}`);
  }

  setRules(id: string, text: string): Promise<RulesResult> {
    return this.request('PUT', `/api/sessions/${id}/rus`, { text });
  }

  setSteps(id: string, text: string): Promise<StepsResult> {
    return this.request('PUT', `/api/sessions/${id}/usecase`, { text });
  }

  extract(id: string): Promise<ExtractResult> {
    return this.request('POST', `/api/sessions/${id}/extract`);
  }

  setTypes(id: string, text: string): Promise<TypesReport> {
    return this.request('PUT', `/api/sessions/${id}/types`, { text });
  }

  buildOntology(id: string, base?: string, permissive = false): Promise<OntologyResult> {
    const body: Record<string, unknown> = { permissive };
    if (base) body.base = base;
    return this.request('POST', `/api/sessions/${id}/ontology`, body);
  }

  runQuery(id: string, query: string): Promise<QueryResult> {
    return this.request('POST', `/api/sessions/${id}/query`, { query });
  }

  async matchPatterns(id: string): Promise<PatternVerdict[]> {
    const res = await this.request<{ results: PatternVerdict[] }>(
      'POST',
      `/api/sessions/${id}/match`
    );
    return res.results;
  }
}
