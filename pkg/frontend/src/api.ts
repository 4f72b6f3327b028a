import type { AnalysisDoc, EngineRole, ErrorDetail, SessionDoc } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly detail: ErrorDetail,
  ) {
    super(detail.message);
  }
}

/** Thin typed wrapper over the /api routes; fetch is injectable so tests
 * can intercept and inspect every request the client makes. */
export class Api {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      const detail: ErrorDetail = body?.detail?.message
        ? body.detail
        : { code: "http_error", message: `request failed with ${response.status}` };
      throw new ServiceError(response.status, detail);
    }
    return body as T;
  }

  health(): Promise<{ status: string; table_horizon: number }> {
    return this.request("/api/health");
  }

  createGame(heaps: string, engineRole: EngineRole): Promise<SessionDoc> {
    return this.request("/api/games", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ heaps, engine_role: engineRole }),
    });
  }

  getGame(id: string): Promise<SessionDoc> {
    return this.request(`/api/games/${encodeURIComponent(id)}`);
  }

  submitMove(id: string, heap: number, take: number): Promise<SessionDoc> {
    return this.request(`/api/games/${encodeURIComponent(id)}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ heap, take }),
    });
  }

  analyze(heaps: string): Promise<AnalysisDoc> {
    return this.request(`/api/analyze?heaps=${encodeURIComponent(heaps)}`);
  }
}
