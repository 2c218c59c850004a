import { Actions } from '../actions';
import { card, el } from '../dom';
import { AppState, Store } from '../store';

const PLACEHOLDER = `// one rule per line, first match wins
<I> <R> <I> -> Individual:,<I>,Facts:,<R> <I>
<I> <R> : <I>+ -> Individual:,<I>,Facts:,<R> <I>+`;

export function renderRules(root: HTMLElement, store: Store<AppState>, actions: Actions): void {
  const section = card(
    '1 · Statement rules',
    'Each rule maps a sentence pattern to a 4-tuple template. ' +
      'Placeholders: <I> individual, <R> relation, <D> data property, <T> type; ' +
      '<I>+ captures a comma-separated list after a ":".'
  );

  const text = el('textarea', { id: 'rules-text', placeholder: PLACEHOLDER, spellcheck: false });
  text.addEventListener('input', () => store.set({ rusText: text.value }));

  const apply = el('button', { id: 'rules-apply' }, 'Apply rules');
  apply.addEventListener('click', () => void actions.applyRules());

  const status = el('div', { id: 'rules-status', class: 'status' });
  const issues = el('ul', { id: 'rules-errors', class: 'results' });

  section.append(text, el('div', { class: 'row' }, apply), status, issues);
  root.appendChild(section);

  function sync(s: AppState): void {
    if (text.value !== s.rusText) text.value = s.rusText;
    apply.disabled = s.busy || s.sessionId === null;
    status.textContent = s.rulesLoaded === null ? '' : `${s.rulesLoaded} rules loaded`;
    status.className = 'status ok';
    issues.innerHTML = '';
    for (const issue of s.rusErrors) {
      issues.appendChild(
        el('li', { class: 'bad' }, `line ${issue.line}: ${issue.code}: ${issue.message}`)
      );
    }
  }

  sync(store.get());
  store.subscribe(sync);
}
