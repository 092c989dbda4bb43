import type {
  FullView,
  StrategyDescriptor,
  StrategyInfo,
  SessionView,
  TurnView,
} from "./types.js";

/** A non-2xx reply, carrying the service's {error, detail} body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiError";
  }
}

/** Thin typed client for the session service.
 *
 * `base` is the service origin ("" for same-origin); nothing here computes
 * probabilities or costs, every number shown downstream is a server field.
 */
export class Api {
  constructor(readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = body?.error ?? `HTTP ${response.status}`;
      const detail = body?.detail ?? response.statusText;
      throw new ApiError(response.status, code, detail);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  createSession(
    weights: string[],
    strategy: StrategyDescriptor,
  ): Promise<SessionView> {
    return this.post("/api/session", {
      distribution: { weights },
      strategy,
    });
  }

  postAnswer(sessionId: string, answer: boolean): Promise<TurnView> {
    return this.post(`/api/session/${sessionId}/answer`, { answer });
  }

  getSession(sessionId: string): Promise<FullView> {
    return this.request(`/api/session/${sessionId}`);
  }

  getStrategies(): Promise<{ strategies: StrategyInfo[] }> {
    return this.request("/api/meta/strategies");
  }
}
