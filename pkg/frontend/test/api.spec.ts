import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiClient, ApiError } from '../src/api';

interface Call {
  url: string;
  method?: string;
  body?: string;
}

function stubFetch(status: number, body: unknown): Call[] {
  const calls: Call[] = [];
  vi.stubGlobal('fetch', async (url: string, init?: RequestInit) => {
    calls.push({ url, method: init?.method, body: init?.body as string | undefined });
    return {
      ok: status < 400,
      status,
      json: async () => {
        if (body === undefined) throw new Error('no body');
        return body;
      },
    };
  });
  return calls;
}

afterEach(() => vi.unstubAllGlobals());

describe('ApiClient', () => {
  it('posts to /api/sessions and returns the session ref', async () => {
    const calls = stubFetch(200, { id: 's1', stages: { rus: false } });
    const session = await new ApiClient().createSession();
    expect(session.id).toBe('s1');
    expect(calls).toEqual([{ url: '/api/sessions', method: 'POST', body: undefined }]);
  });

  it('prefixes the configured base URL and serializes bodies', async () => {
    const calls = stubFetch(200, { ok: true, rules: 3 });
    await new ApiClient('http://x:1').setRules('s1', '<I> <R> <I> -> a,b,c,d');
    expect(calls[0].url).toBe('http://x:1/api/sessions/s1/rus');
    expect(calls[0].method).toBe('PUT');
    expect(JSON.parse(calls[0].body!)).toEqual({ text: '<I> <R> <I> -> a,b,c,d' });
  });

  it('omits the base field when none is given', async () => {
    const calls = stubFetch(200, { prefix: 'ont: <b#>', triples: 1, manchester: '' });
    await new ApiClient().buildOntology('s1');
    expect(JSON.parse(calls[0].body!)).toEqual({ permissive: false });
    await new ApiClient().buildOntology('s1', 'http://b', true);
    expect(JSON.parse(calls[1].body!)).toEqual({ base: 'http://b', permissive: true });
  });

  it('unwraps the match result list', async () => {
    stubFetch(200, { results: [{ pattern: 'p', matched: true }] });
    const verdicts = await new ApiClient().matchPatterns('s1');
    expect(verdicts).toEqual([{ pattern: 'p', matched: true }]);
  });

  it('turns an error body into ApiError with code, status, and detail', async () => {
    stubFetch(409, { error: { code: 'StageError', message: 'stage missing', line: 4 } });
    const err = await new ApiClient().extract('s1').catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe('StageError');
    expect(err.message).toBe('stage missing');
    expect(err.detail.line).toBe(4);
  });

  it('falls back to HttpError when the error body is not JSON', async () => {
    stubFetch(502, undefined);
    const err = await new ApiClient().getSession('s1').catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe('HttpError');
    expect(err.message).toBe('HTTP 502');
  });
});
