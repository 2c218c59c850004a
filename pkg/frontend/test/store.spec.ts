import { describe, expect, it, vi } from 'vitest';
import { initialState, Store } from '../src/store';

describe('Store', () => {
  it('merges patches into the snapshot', () => {
    const store = new Store({ a: 1, b: 'x' });
    store.set({ a: 2 });
    expect(store.get()).toEqual({ a: 2, b: 'x' });
  });

  it('notifies subscribers once per set with the new state', () => {
    const store = new Store({ n: 0 });
    const seen = vi.fn();
    store.subscribe(seen);
    store.set({ n: 1 });
    store.set({ n: 2 });
    expect(seen).toHaveBeenCalledTimes(2);
    expect(seen).toHaveBeenLastCalledWith({ n: 2 });
  });

  it('stops notifying after unsubscribe', () => {
    const store = new Store({ n: 0 });
    const seen = vi.fn();
    const off = store.subscribe(seen);
    store.set({ n: 1 });
    off();
    store.set({ n: 2 });
    expect(seen).toHaveBeenCalledTimes(1);
  });

  it('starts with every stage unlocked=false and no session', () => {
    expect(initialState.sessionId).toBeNull();
    expect(Object.values(initialState.stages)).toEqual([false, false, false, false, false]);
  });
});
