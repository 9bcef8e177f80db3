/** Thin fetch client for the session service. All state lives server-side;
 * the client never mutates anything except via postMove. */

import type {
  CreateSessionRequest,
  MovePayload,
  Registries,
  SessionState,
} from "./types";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.status = status;
  }
}

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body?.detail === "string"
          ? body.detail
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }

  registries(): Promise<Registries> {
    return this.request<Registries>("/registries");
  }

  createSession(body: CreateSessionRequest): Promise<SessionState> {
    return this.request<SessionState>("/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getState(sessionId: string): Promise<SessionState> {
    return this.request<SessionState>(`/sessions/${sessionId}`);
  }

  postMove(sessionId: string, move: MovePayload): Promise<SessionState> {
    return this.request<SessionState>(`/sessions/${sessionId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
  }
}
