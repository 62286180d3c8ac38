// Thin typed client over the engine's HTTP API. The server owns all
// visibility decisions; this class only moves payloads back and forth.
// Mutations are queued so at most one is in flight per session.

import type {
  Capabilities,
  CollapseResponse,
  ExpandResponse,
  GraphPayload,
  NodeDetail,
  SearchMatch,
  SessionCreated,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  status: number;
  /** parse errors from a 422, when the server reported any */
  errors: { line: number; column: number; message: string }[];

  constructor(status: number, detail: string,
              errors: ApiError['errors'] = []) {
    super(detail);
    this.status = status;
    this.errors = errors;
  }
}

async function asError(response: Response): Promise<ApiError> {
  let detail = `${response.status}`;
  let errors: ApiError['errors'] = [];
  try {
    const body = await response.json();
    if (typeof body.detail === 'string') detail = body.detail;
    if (Array.isArray(body.errors)) errors = body.errors;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail, errors);
}

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: FetchLike;
  private sessionId: string | null = null;
  private mutationChain: Promise<unknown> = Promise.resolve();

  constructor(baseUrl = '', fetchImpl: FetchLike = (u, i) => fetch(u, i)) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
    this.fetchImpl = fetchImpl;
  }

  get session(): string | null {
    return this.sessionId;
  }

  private async request<T>(method: string, path: string,
                           body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { 'content-type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) throw await asError(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  /** serialize mutations: each waits for the previous one to settle */
  private mutate<T>(path: string, body: unknown): Promise<T> {
    const run = () => this.request<T>('POST', this.sessionPath(path), body);
    const next = this.mutationChain.then(run, run);
    this.mutationChain = next.catch(() => undefined);
    return next;
  }

  private sessionPath(suffix: string): string {
    if (!this.sessionId) throw new Error('no active session');
    return `/sessions/${this.sessionId}${suffix}`;
  }

  capabilities(): Promise<Capabilities> {
    return this.request('GET', '/');
  }

  async createSession(document: string): Promise<SessionCreated> {
    const created = await this.request<SessionCreated>(
      'POST', '/sessions', { document });
    this.sessionId = created.sessionId;
    return created;
  }

  async deleteSession(): Promise<void> {
    if (!this.sessionId) return;
    const path = this.sessionPath('');
    this.sessionId = null;
    await this.request<void>('DELETE', path);
  }

  graph(): Promise<GraphPayload> {
    return this.request('GET', this.sessionPath('/graph'));
  }

  expand(nodeId: string,
         direction: 'descendants' | 'ancestors' = 'descendants'):
      Promise<ExpandResponse> {
    return this.mutate('/expand', { nodeId, direction });
  }

  collapse(nodeId: string,
           direction: 'descendants' | 'ancestors' = 'descendants'):
      Promise<CollapseResponse> {
    return this.mutate('/collapse', { nodeId, direction });
  }

  slider(nodeId: string, percent: number): Promise<GraphPayload> {
    return this.mutate('/slider', { nodeId, percent });
  }

  setPolicy(policy: string): Promise<GraphPayload> {
    return this.mutate('/policy', { policy });
  }

  setStep(stepPercent: number): Promise<GraphPayload> {
    return this.mutate('/step', { stepPercent });
  }

  select(nodeId: string | null): Promise<GraphPayload> {
    return this.mutate('/select', { nodeId });
  }

  setMarkers(nodeId: string, markers: { disjoint?: boolean;
             properties?: boolean }): Promise<GraphPayload> {
    return this.mutate('/markers', { nodeId, ...markers });
  }

  setDetailWindow(upper: string, lower: string): Promise<GraphPayload> {
    return this.mutate('/detail-window', { upper, lower });
  }

  summarize(method: string, n: number,
            customConcepts?: string[]): Promise<GraphPayload> {
    const body: Record<string, unknown> = { method, n };
    if (customConcepts) body.customConcepts = customConcepts;
    return this.mutate('/summarize', body);
  }

  search(q: string): Promise<{ matches: SearchMatch[] }> {
    const query = encodeURIComponent(q);
    return this.request('GET', this.sessionPath(`/search?q=${query}`));
  }

  nodeDetail(nodeId: string): Promise<NodeDetail> {
    return this.request('GET',
                        this.sessionPath(`/node/${encodeURIComponent(nodeId)}`));
  }

  async exportSvg(): Promise<string> {
    const response = await this.fetchImpl(
      this.baseUrl + this.sessionPath('/export.svg'), { method: 'GET' });
    if (!response.ok) throw await asError(response);
    return response.text();
  }

  async saveView(): Promise<string> {
    const response = await this.fetchImpl(
      this.baseUrl + this.sessionPath('/view.ontview'), { method: 'GET' });
    if (!response.ok) throw await asError(response);
    return response.text();
  }

  async restoreView(document: string): Promise<GraphPayload> {
    const response = await this.fetchImpl(
      this.baseUrl + this.sessionPath('/view.ontview'),
      { method: 'PUT', body: document,
        headers: { 'content-type': 'text/plain' } });
    if (!response.ok) throw await asError(response);
    return (await response.json()) as GraphPayload;
  }
}
