// Assembles the single-page flow: stage badges, error banner, one card per
// stage. State lives in the store; the server decides stage transitions.

import { Actions } from './actions';
import { Api } from './api';
import { el } from './dom';
import { renderOntology } from './sections/ontology';
import { renderQueries } from './sections/queries';
import { renderRules } from './sections/rules';
import { renderSteps } from './sections/steps';
import { renderTypes } from './sections/types';
import { AppState, initialState, Store } from './store';

const STAGES: { key: keyof AppState['stages']; label: string }[] = [
  { key: 'rus', label: 'rules' },
  { key: 'usecase', label: 'steps' },
  { key: 'extracted', label: 'extracted' },
  { key: 'typed', label: 'typed' },
  { key: 'ontology', label: 'ontology' },
];

export function createApp(root: HTMLElement, api: Api): Store<AppState> {
  const store = new Store<AppState>(initialState);
  const actions = new Actions(api, store);

  const busy = el('span', { id: 'busy', class: 'badge', hidden: true }, 'working…');
  root.appendChild(
    el(
      'header',
      { class: 'top' },
      el('h1', {}, 'ucat'),
      el('span', { class: 'tagline' }, 'use-case statements → ontology → pattern checks'),
      busy
    )
  );

  const badges = new Map<string, HTMLElement>();
  const stagebar = el('div', { class: 'stagebar' });
  for (const stage of STAGES) {
    const badge = el('span', { id: `stage-${stage.key}`, class: 'badge' }, stage.label);
    badges.set(stage.key, badge);
    stagebar.appendChild(badge);
  }
  root.appendChild(stagebar);

  const banner = el('div', { id: 'error-banner', class: 'banner', hidden: true });
  root.appendChild(banner);

  renderRules(root, store, actions);
  renderSteps(root, store, actions);
  renderTypes(root, store, actions);
  renderOntology(root, store, actions);
  renderQueries(root, store, actions);

  store.subscribe((s) => {
    busy.hidden = !s.busy;
    banner.hidden = s.error === null;
    banner.textContent = s.error ?? '';
    for (const stage of STAGES) {
      badges.get(stage.key)!.classList.toggle('on', s.stages[stage.key]);
    }
  });

  void actions.init();
  return store;
}
