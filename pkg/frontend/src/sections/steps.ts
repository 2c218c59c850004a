import { Actions } from '../actions';
import { card, el } from '../dom';
import { AppState, Store } from '../store';

const PLACEHOLDER = `# U> user steps, S> system steps
U> user clicks newModel
S> system requests : name, description`;

export function renderSteps(root: HTMLElement, store: Store<AppState>, actions: Actions): void {
  const section = card(
    '2 · Use-case steps',
    'One step per line, written against the rules above. Lists after a ":" ' +
      'expand into one statement per item.'
  );

  const text = el('textarea', { id: 'steps-text', placeholder: PLACEHOLDER, spellcheck: false });
  text.addEventListener('input', () => store.set({ usecaseText: text.value }));

  const apply = el('button', { id: 'steps-apply' }, 'Apply steps');
  apply.addEventListener('click', () => void actions.applySteps());

  const extract = el('button', { id: 'extract-btn' }, 'Extract entities & tuples');
  extract.addEventListener('click', () => void actions.extract());

  const results = el('ul', { id: 'steps-results', class: 'results' });
  const entities = el('pre', { id: 'entities', class: 'output', hidden: true });
  const tuples = el('pre', { id: 'tuples', class: 'output', hidden: true });

  section.append(text, el('div', { class: 'row' }, apply, extract), results, entities, tuples);
  root.appendChild(section);

  function sync(s: AppState): void {
    section.classList.toggle('locked', !s.stages.rus);
    if (text.value !== s.usecaseText) text.value = s.usecaseText;
    apply.disabled = s.busy || !s.stages.rus;
    extract.disabled = s.busy || !s.stages.usecase || s.lineResults.some((r) => !r.ok);

    results.innerHTML = '';
    for (const r of s.lineResults) {
      const label = r.ok ? `line ${r.line}` : r.error?.message ?? `line ${r.line}`;
      results.appendChild(el('li', { class: r.ok ? 'ok' : 'bad' }, label));
    }

    entities.hidden = s.entities === null;
    if (s.entities !== null) {
      entities.textContent = [
        `relations:       ${s.entities.relations.join(', ')}`,
        `individuals:     ${s.entities.individuals.join(', ')}`,
        `data properties: ${s.entities.data_properties.join(', ')}`,
        `types:           ${s.entities.types.join(', ')}`,
      ].join('\n');
    }
    tuples.hidden = s.tuples.length === 0;
    tuples.textContent = s.tuples.join('\n');
  }

  sync(store.get());
  store.subscribe(sync);
}
