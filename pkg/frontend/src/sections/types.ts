import { Actions } from '../actions';
import { card, el } from '../dom';
import { AppState, Store } from '../store';

const PLACEHOLDER = `class Actor
class Link
user: Actor
newModel: Link`;

export function renderTypes(root: HTMLElement, store: Store<AppState>, actions: Actions): void {
  const section = card(
    '3 · Classes & assignments',
    'Declare classes (optionally with "< Parent, …"), then assign each ' +
      'individual to one or more classes.'
  );

  const text = el('textarea', { id: 'types-text', placeholder: PLACEHOLDER, spellcheck: false });
  text.addEventListener('input', () => store.set({ typesText: text.value }));

  const apply = el('button', { id: 'types-apply' }, 'Apply types');
  apply.addEventListener('click', () => void actions.applyTypes());

  const report = el('ul', { id: 'types-report', class: 'results' });

  section.append(text, el('div', { class: 'row' }, apply), report);
  root.appendChild(section);

  function sync(s: AppState): void {
    section.classList.toggle('locked', !s.stages.extracted);
    if (text.value !== s.typesText) text.value = s.typesText;
    apply.disabled = s.busy || !s.stages.extracted;

    report.innerHTML = '';
    const r = s.typesReport;
    if (r === null) return;
    if (r.ok) {
      report.appendChild(el('li', { class: 'ok' }, 'every individual has a class'));
    }
    if (r.untyped.length > 0) {
      report.appendChild(el('li', { class: 'bad' }, `untyped: ${r.untyped.join(', ')}`));
    }
    if (r.unknown.length > 0) {
      report.appendChild(el('li', { class: 'bad' }, `assigned but never extracted: ${r.unknown.join(', ')}`));
    }
    for (const warning of r.warnings) {
      report.appendChild(el('li', {}, warning));
    }
  }

  sync(store.get());
  store.subscribe(sync);
}
