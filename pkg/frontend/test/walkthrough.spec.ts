// End-to-end: spawn the real HTTP service and drive the UI (and the raw
// client) through the bundled corpus to the final pattern verdict.
//
// The port must match the page URL in vitest.config.ts so the requests are
// same-origin, exactly as when the API process serves the built UI itself.

import { ChildProcess, spawn } from 'node:child_process';
import { readFileSync } from 'node:fs';
import { dirname, resolve } from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { ApiClient, ApiError } from '../src/api';
import { createApp } from '../src/app';

const repo = resolve(dirname(fileURLToPath(import.meta.url)), '..', '..');
const port = 18731;
const base = `http://127.0.0.1:${port}`;

const rusText = readFileSync(resolve(repo, 'corpus/model_upload.rus'), 'utf8');
const usecaseText = readFileSync(resolve(repo, 'corpus/model_upload.usecase'), 'utf8');
const typesText = readFileSync(resolve(repo, 'corpus/model_upload.types'), 'utf8');
const patternText = readFileSync(resolve(repo, 'corpus/patterns/model-upload.rq'), 'utf8');

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

async function until(what: string, cond: () => boolean, ms = 10_000): Promise<void> {
  const deadline = Date.now() + ms;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await sleep(25);
  }
}

let server: ChildProcess;

beforeAll(async () => {
  const script = [
    'import uvicorn',
    'from ucat.service import create_app',
    "app = create_app(catalog_dir='corpus/patterns')",
    `uvicorn.run(app, host='127.0.0.1', port=${port}, log_level='error')`,
  ].join('\n');
  server = spawn('python3', ['-c', script], { cwd: repo, stdio: 'ignore' });
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const res = await fetch(`${base}/api/sessions`, { method: 'POST' });
      if (res.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error('service did not come up');
    await sleep(200);
  }
});

afterAll(() => {
  server?.kill();
});

describe('against the real service', () => {
  it('runs the whole corpus through the raw client', async () => {
    const api = new ApiClient(base);
    const session = await api.createSession();

    const rules = await api.setRules(session.id, rusText);
    expect(rules).toEqual({ ok: true, rules: 3 });

    const steps = await api.setSteps(session.id, usecaseText);
    expect(steps.ok).toBe(true);
    expect(steps.results).toHaveLength(7);

    const extracted = await api.extract(session.id);
    expect(extracted.tuples).toHaveLength(22);
    expect(extracted.tuples[0]).toBe('Individual:,user,Facts:,clicks newModel');
    expect(extracted.entities.individuals[0]).toBe('user');

    const report = await api.setTypes(session.id, typesText);
    expect(report.ok).toBe(true);

    const ontology = await api.buildOntology(session.id);
    expect(ontology.prefix).toBe('ont: <http://www.url.com/Requirements#>');
    expect(ontology.triples).toBe(38);
    expect(ontology.manchester).toContain('Class: <http://www.url.com/Requirements#Actor>');

    const answer = await api.runQuery(session.id, patternText);
    expect(answer).toEqual({ form: 'ask', result: true });

    const verdicts = await api.matchPatterns(session.id);
    expect(verdicts).toEqual([{ pattern: 'model-upload', matched: true }]);
  });

  it('surfaces stage errors from the server', async () => {
    const api = new ApiClient(base);
    const session = await api.createSession();
    const err = await api.extract(session.id).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe('StageError');
  });

  it('drives the UI from empty page to pattern checklist', async () => {
    document.body.innerHTML = '<main id="app"></main>';
    const root = document.getElementById('app')!;
    const store = createApp(root, new ApiClient(base));
    await until('session', () => store.get().sessionId !== null);

    const setText = (id: string, value: string) => {
      const area = document.getElementById(id) as HTMLTextAreaElement;
      area.value = value;
      area.dispatchEvent(new Event('input'));
    };
    const click = (id: string) => {
      const button = document.getElementById(id) as HTMLButtonElement;
      expect(button.disabled).toBe(false);
      button.click();
    };
    const byId = (id: string) => document.getElementById(id)!;

    setText('rules-text', rusText);
    click('rules-apply');
    await until('rules stage', () => byId('stage-rus').classList.contains('on'));
    expect(byId('rules-status').textContent).toBe('3 rules loaded');

    setText('steps-text', usecaseText);
    click('steps-apply');
    await until('steps stage', () => byId('stage-usecase').classList.contains('on'));
    expect(document.querySelectorAll('#steps-results li.ok')).toHaveLength(7);

    click('extract-btn');
    await until('extraction', () => byId('stage-extracted').classList.contains('on'));
    expect(byId('tuples').textContent!.split('\n')).toHaveLength(22);
    expect(byId('entities').textContent).toContain('user, newModel, system');

    setText('types-text', typesText);
    click('types-apply');
    await until('types stage', () => byId('stage-typed').classList.contains('on'));
    expect(byId('types-report').textContent).toContain('every individual has a class');

    click('ontology-build');
    await until('ontology stage', () => byId('stage-ontology').classList.contains('on'));
    expect(byId('ontology-info').textContent).toBe(
      'PREFIX ont: <http://www.url.com/Requirements#> — 38 triples'
    );
    expect(byId('manchester').textContent).toContain('Individual: <http://www.url.com/Requirements#user>');

    setText('query-text', patternText);
    click('query-run');
    await until('verdict', () => document.querySelector('#query-result .verdict') !== null);
    const verdict = document.querySelector('#query-result .verdict')!;
    expect(verdict.textContent).toBe('true');
    expect(verdict.classList.contains('true')).toBe(true);

    click('patterns-run');
    await until('checklist', () => document.querySelectorAll('#patterns-list li').length > 0);
    expect(byId('patterns-list').textContent).toBe('model-upload — MATCH');

    const select = [
      'PREFIX ont: <http://www.url.com/Requirements#>',
      'SELECT ?what WHERE { ?user ont:clicks ?what }',
    ].join('\n');
    setText('query-text', select);
    click('query-run');
    await until('select table', () => document.querySelector('#query-result table') !== null);
    const cells = [...document.querySelectorAll('#query-result td')].map((td) => td.textContent);
    expect(cells).toEqual(['newModel', 'save']);
  });
});
