// User-level operations: each one calls the API, then re-reads the session
// so the store always reflects the server's view of stages and derived
// artifacts (the server decides what an edit invalidates).

import { Api, ApiError } from './api';
import { AppState, Store } from './store';

export class Actions {
  constructor(
    private readonly api: Api,
    private readonly store: Store<AppState>
  ) {}

  async init(): Promise<void> {
    try {
      const session = await this.api.createSession();
      this.store.set({ sessionId: session.id, stages: session.stages });
    } catch (err) {
      this.store.set({ error: `cannot reach the API: ${describe(err)}` });
    }
  }

  applyRules(): Promise<void> {
    return this.guard(async (id) => {
      const res = await this.api.setRules(id, this.store.get().rusText);
      if (res.ok) {
        this.store.set({ rulesLoaded: res.rules, rusErrors: [] });
      } else {
        this.store.set({ rulesLoaded: null, rusErrors: res.errors });
      }
      await this.refresh(id);
    });
  }

  applySteps(): Promise<void> {
    return this.guard(async (id) => {
      const res = await this.api.setSteps(id, this.store.get().usecaseText);
      this.store.set({ lineResults: res.results });
      await this.refresh(id);
    });
  }

  extract(): Promise<void> {
    return this.guard(async (id) => {
      const res = await this.api.extract(id);
      this.store.set({ entities: res.entities, tuples: res.tuples });
      await this.refresh(id);
    });
  }

  applyTypes(): Promise<void> {
    return this.guard(async (id) => {
      const report = await this.api.setTypes(id, this.store.get().typesText);
      this.store.set({ typesReport: report });
      await this.refresh(id);
    });
  }

  buildOntology(): Promise<void> {
    return this.guard(async (id) => {
      const { baseIri, permissive } = this.store.get();
      const res = await this.api.buildOntology(id, baseIri.trim() || undefined, permissive);
      this.store.set({
        prefix: res.prefix,
        tripleCount: res.triples,
        manchester: res.manchester,
      });
      await this.refresh(id);
    });
  }

  runQuery(): Promise<void> {
    return this.guard(async (id) => {
      const result = await this.api.runQuery(id, this.store.get().queryText);
      this.store.set({ queryResult: result });
    });
  }

  runPatterns(): Promise<void> {
    return this.guard(async (id) => {
      const patterns = await this.api.matchPatterns(id);
      this.store.set({ patterns });
    });
  }

  private async refresh(id: string): Promise<void> {
    const state = await this.api.getSession(id);
    this.store.set({
      stages: state.stages,
      lineResults: state.line_results ?? [],
      entities: state.entities ?? null,
      tuples: state.tuples ?? [],
      typesReport: state.types_report ?? null,
      prefix: state.prefix ?? null,
      tripleCount: state.triples ?? null,
      manchester: state.manchester ?? null,
    });
    if (!state.stages.ontology) {
      this.store.set({ queryResult: null, patterns: null });
    }
  }

  private async guard(work: (sessionId: string) => Promise<void>): Promise<void> {
    const id = this.store.get().sessionId;
    if (id === null || this.store.get().busy) return;
    this.store.set({ busy: true, error: null });
    try {
      await work(id);
    } catch (err) {
      this.store.set({ error: describe(err) });
    } finally {
      this.store.set({ busy: false });
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    const where = typeof err.detail.line === 'number' ? ` (line ${err.detail.line})` : '';
    return `${err.code}: ${err.message}${where}`;
  }
  return err instanceof Error ? err.message : String(err);
}
