import type {
  CreateResponse,
  MoveResponse,
  SessionSettings,
  SessionState,
} from "./types.js";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client for the local game bridge; all game logic stays server-side. */
export class BridgeClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, init);
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      body = null;
    }
    if (!resp.ok) {
      const detail =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${resp.status}`;
      throw new Error(detail);
    }
    return body as T;
  }

  createSession(settings: SessionSettings): Promise<CreateResponse> {
    return this.request<CreateResponse>("/session", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(settings),
    });
  }

  getState(id: string): Promise<{ state: SessionState }> {
    return this.request<{ state: SessionState }>(`/session/${id}`);
  }

  move(id: string, symbol: number): Promise<MoveResponse> {
    return this.request<MoveResponse>(`/session/${id}/move`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ symbol }),
    });
  }

  exportTrace(id: string): Promise<Record<string, unknown>> {
    return this.request<Record<string, unknown>>(`/session/${id}/export`);
  }

  deleteSession(id: string): Promise<{ deleted: boolean }> {
    return this.request<{ deleted: boolean }>(`/session/${id}`, {
      method: "DELETE",
    });
  }
}
