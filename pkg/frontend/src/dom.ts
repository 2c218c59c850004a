// Tiny element builder so the section renderers stay readable.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  props: Partial<HTMLElementTagNameMap[K]> & { class?: string } = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  const { class: cls, ...rest } = props;
  if (cls) node.className = cls;
  Object.assign(node, rest);
  node.append(...children);
  return node;
}

export function card(title: string, hint: string): HTMLElement {
  return el(
    'section',
    { class: 'card' },
    el('h2', {}, title),
    el('p', { class: 'hint' }, hint)
  );
}
