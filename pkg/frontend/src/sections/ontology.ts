import { Actions } from '../actions';
import { card, el } from '../dom';
import { AppState, Store } from '../store';

export function renderOntology(root: HTMLElement, store: Store<AppState>, actions: Actions): void {
  const section = card(
    '4 · Ontology',
    'Materialize the extracted statements as a Manchester-syntax document.'
  );

  const base = el('input', {
    id: 'base-iri',
    type: 'text',
    placeholder: 'base IRI (default http://www.url.com/Requirements)',
  });
  base.addEventListener('input', () => store.set({ baseIri: base.value }));

  const permissive = el('input', { id: 'permissive', type: 'checkbox' });
  permissive.addEventListener('change', () => store.set({ permissive: permissive.checked }));

  const build = el('button', { id: 'ontology-build' }, 'Build ontology');
  build.addEventListener('click', () => void actions.buildOntology());

  const info = el('div', { id: 'ontology-info', class: 'status ok' });
  const download = el('a', { id: 'ontology-download', class: 'download', hidden: true }, 'download .omn');
  download.setAttribute('download', 'ontology.omn');
  const doc = el('pre', { id: 'manchester', class: 'output', hidden: true });

  section.append(
    base,
    el(
      'div',
      { class: 'row' },
      build,
      el('label', {}, permissive, ' allow untyped individuals'),
      download
    ),
    info,
    doc
  );
  root.appendChild(section);

  function sync(s: AppState): void {
    section.classList.toggle('locked', !s.stages.typed);
    if (base.value !== s.baseIri) base.value = s.baseIri;
    permissive.checked = s.permissive;
    build.disabled = s.busy || !s.stages.typed;

    info.textContent =
      s.prefix !== null && s.tripleCount !== null
        ? `PREFIX ${s.prefix} — ${s.tripleCount} triples`
        : '';
    doc.hidden = s.manchester === null;
    doc.textContent = s.manchester ?? '';
    download.hidden = s.manchester === null;
    if (s.manchester !== null) {
      download.href = 'data:text/plain;charset=utf-8,' + encodeURIComponent(s.manchester);
    }
  }

  sync(store.get());
  store.subscribe(sync);
}
