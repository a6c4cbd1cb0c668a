/** Thin fetch-based client for the assignment service. All numbers displayed
 * anywhere in the UI come out of these responses — there is deliberately no
 * client-side evaluation of objectives. */

import type {
  Assignment,
  EvaluateResponse,
  GoalsResponse,
  ParetoResponse,
  ScenarioDoc,
  ServiceError,
  SolveOptions,
  SolveResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errors: ServiceError[],
  ) {
    super(errors.map((e) => e.message).join('; ') || `HTTP ${status}`);
    this.name = 'ApiError';
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      let errors: ServiceError[] = [];
      try {
        errors = ((await resp.json()) as { errors?: ServiceError[] }).errors ?? [];
      } catch {
        // non-JSON error body; status alone has to do
      }
      throw new ApiError(resp.status, errors);
    }
    return (await resp.json()) as T;
  }

  async health(): Promise<{ status: string; version: string }> {
    const resp = await this.fetchFn(this.baseUrl + '/health');
    if (!resp.ok) throw new ApiError(resp.status, []);
    return (await resp.json()) as { status: string; version: string };
  }

  solve(scenario: ScenarioDoc, options?: SolveOptions): Promise<SolveResponse> {
    return this.post('/api/solve', options ? { scenario, options } : { scenario });
  }

  evaluate(scenario: ScenarioDoc, assignment: Assignment): Promise<EvaluateResponse> {
    return this.post('/api/evaluate', { scenario, assignment });
  }

  goals(scenario: ScenarioDoc): Promise<GoalsResponse> {
    return this.post('/api/goals', { scenario });
  }

  pareto(scenario: ScenarioDoc): Promise<ParetoResponse> {
    return this.post('/api/pareto', { scenario });
  }
}
