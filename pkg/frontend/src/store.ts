// Minimal observable state container: get a snapshot, patch it, subscribe.

import type {
  EntityLists,
  LineResult,
  PatternVerdict,
  QueryResult,
  RuleIssue,
  StageFlags,
  TypesReport,
} from './api';

export interface AppState {
  sessionId: string | null;
  stages: StageFlags;
  busy: boolean;
  error: string | null;

  rusText: string;
  rulesLoaded: number | null;
  rusErrors: RuleIssue[];

  usecaseText: string;
  lineResults: LineResult[];

  entities: EntityLists | null;
  tuples: string[];

  typesText: string;
  typesReport: TypesReport | null;

  baseIri: string;
  permissive: boolean;
  prefix: string | null;
  tripleCount: number | null;
  manchester: string | null;

  queryText: string;
  queryResult: QueryResult | null;
  patterns: PatternVerdict[] | null;
}

export const initialState: AppState = {
  sessionId: null,
  stages: { rus: false, usecase: false, extracted: false, typed: false, ontology: false },
  busy: false,
  error: null,
  rusText: '',
  rulesLoaded: null,
  rusErrors: [],
  usecaseText: '',
  lineResults: [],
  entities: null,
  tuples: [],
  typesText: '',
  typesReport: null,
  baseIri: '',
  permissive: false,
  prefix: null,
  tripleCount: null,
  manchester: null,
  queryText: '',
  queryResult: null,
  patterns: null,
};

export class Store<S> {
  private listeners: ((state: S) => void)[] = [];

  constructor(private state: S) {}

  get(): S {
    return this.state;
  }

  set(patch: Partial<S>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of [...this.listeners]) listener(this.state);
  }

  subscribe(listener: (state: S) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
