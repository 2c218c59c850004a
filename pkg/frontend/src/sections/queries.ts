import { Actions } from '../actions';
import { card, el } from '../dom';
import { AppState, Store } from '../store';

const PLACEHOLDER = `PREFIX ont: <http://www.url.com/Requirements#>
ASK { ?who ont:clicks ?what }`;

export function renderQueries(root: HTMLElement, store: Store<AppState>, actions: Actions): void {
  const section = card(
    '5 · Queries & patterns',
    'Run ASK/SELECT queries (FILTER NOT EXISTS supported) against the ' +
      'ontology, or evaluate the server’s pattern catalog.'
  );

  const text = el('textarea', { id: 'query-text', placeholder: PLACEHOLDER, spellcheck: false });
  text.addEventListener('input', () => store.set({ queryText: text.value }));

  const run = el('button', { id: 'query-run' }, 'Run query');
  run.addEventListener('click', () => void actions.runQuery());

  const patterns = el('button', { id: 'patterns-run' }, 'Check catalog patterns');
  patterns.addEventListener('click', () => void actions.runPatterns());

  const result = el('div', { id: 'query-result' });
  const checklist = el('ul', { id: 'patterns-list', class: 'results' });

  section.append(text, el('div', { class: 'row' }, run, patterns), result, checklist);
  root.appendChild(section);

  function sync(s: AppState): void {
    section.classList.toggle('locked', !s.stages.ontology);
    if (text.value !== s.queryText) text.value = s.queryText;
    run.disabled = s.busy || !s.stages.ontology;
    patterns.disabled = s.busy || !s.stages.ontology;

    result.innerHTML = '';
    const r = s.queryResult;
    if (r !== null && r.form === 'ask') {
      result.appendChild(el('span', { class: `verdict ${r.result}` }, String(r.result)));
    } else if (r !== null) {
      const head = el('tr', {}, ...r.variables.map((v) => el('th', {}, `?${v}`)));
      const body = r.rows.map((row) => el('tr', {}, ...row.map((cell) => el('td', {}, cell))));
      result.appendChild(el('table', { class: 'select' }, head, ...body));
      result.appendChild(el('div', { class: 'status' }, `${r.rows.length} rows`));
    }

    checklist.innerHTML = '';
    for (const p of s.patterns ?? []) {
      checklist.appendChild(
        el('li', { class: p.matched ? 'ok' : 'bad' }, `${p.pattern} — ${p.matched ? 'MATCH' : 'no match'}`)
      );
    }
  }

  sync(store.get());
  store.subscribe(sync);
}
