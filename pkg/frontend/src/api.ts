// Thin typed client over the evaluation service. All decision mathematics
// happens server-side; this module only moves JSON.

import type {
  Judgment,
  ProjectConfigDoc,
  ReportDoc,
  SessionDoc,
  SubmissionBody,
  WeightsDoc,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private token: string | null = null,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  withToken(token: string): ApiClient {
    return new ApiClient(this.baseUrl, token, this.fetchImpl);
  }

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    if (!response.ok) {
      let message = text;
      try {
        const doc = JSON.parse(text);
        message = doc.error ?? doc.detail ?? text;
      } catch {
        // non-JSON error body; keep raw text
      }
      throw new ApiError(response.status, message);
    }
    return (text ? JSON.parse(text) : {}) as T;
  }

  // --- moderator ---
  createProject(config: Partial<ProjectConfigDoc>) {
    return this.call<{ id: string; moderator_token: string }>('POST', '/projects', config);
  }

  getProject(id: string) {
    return this.call<{ id: string; state: string; config: ProjectConfigDoc }>(
      'GET',
      `/projects/${id}`,
    );
  }

  addAlternative(id: string, alternative: { id: string; name: string; url: string }) {
    return this.call('POST', `/projects/${id}/alternatives`, alternative);
  }

  putCriteria(id: string, criteria: ProjectConfigDoc['criteria']) {
    return this.call('PUT', `/projects/${id}/criteria`, { criteria });
  }

  putJudgments(id: string, judgments: Judgment[]) {
    return this.call<{ weights: WeightsDoc }>('PUT', `/projects/${id}/judgments`, {
      judgments,
    });
  }

  putRoles(id: string, roles: ProjectConfigDoc['roles']) {
    return this.call('PUT', `/projects/${id}/roles`, { roles });
  }

  registerUsers(id: string, users: ProjectConfigDoc['users'], groupWeights?: Record<string, number>) {
    return this.call<{ tokens: Record<string, string> }>('POST', `/projects/${id}/users`, {
      users,
      ...(groupWeights ? { group_weights: groupWeights } : {}),
    });
  }

  setState(id: string, state: 'collecting' | 'closed') {
    return this.call<{ state: string }>('POST', `/projects/${id}/state`, { state });
  }

  compute(id: string) {
    return this.call<{ report: ReportDoc; stale: boolean }>('POST', `/projects/${id}/compute`);
  }

  importDataset(id: string, dataset: unknown) {
    return this.call<{ accepted: number }>('POST', `/projects/${id}/import`, dataset);
  }

  // --- participant ---
  getSession(id: string) {
    return this.call<SessionDoc>('GET', `/projects/${id}/session`);
  }

  bindRole(id: string, role: string) {
    return this.call<{ user: string; role: string }>('POST', `/projects/${id}/session`, { role });
  }

  rollRoleDice(id: string) {
    return this.call<{ user: string; role: string }>('POST', `/projects/${id}/role-dice`);
  }

  submit(id: string, body: SubmissionBody) {
    return this.call<{ accepted: boolean; completion: Record<string, Record<string, boolean>> }>(
      'POST',
      `/projects/${id}/submissions`,
      body,
    );
  }

  // --- shared ---
  getReport(id: string) {
    return this.call<{ report: ReportDoc; stale: boolean }>('GET', `/projects/${id}/report`);
  }
}
