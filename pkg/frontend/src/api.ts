import type { Knowledge, Pose, Quat, SceneDoc, SessionBody, SubmitBody } from "./types.js";

/** Server-side rejection carrying the gateway's machine-readable code. */
export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

/** Network-level failure after the retry budget was spent. */
export class NetworkError extends Error {
  constructor(cause: unknown) {
    super(`gateway unreachable: ${String(cause)}`);
    this.name = "NetworkError";
  }
}

export type Action =
  | { type: "Teleport"; point_id: string }
  | { type: "EnterGame" }
  | { type: "ReturnToRoaming" }
  | { type: "Touch"; item_id: string }
  | { type: "Grab"; item_id: string }
  | { type: "Rotate"; item_id: string; rotation: Quat }
  | { type: "Release"; item_id: string; pose: Pose }
  | { type: "PanelOpen"; exhibit_id: string };

let keyCounter = 0;

function freshKey(): string {
  // crypto.randomUUID exists in browsers and node >= 19
  const c = (globalThis as { crypto?: { randomUUID?: () => string } }).crypto;
  if (c && c.randomUUID) return c.randomUUID();
  keyCounter += 1;
  return `k-${Date.now()}-${keyCounter}`;
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async getScene(): Promise<{ scene: SceneDoc; version: string }> {
    const res = await this.request("GET", "/api/scene");
    return {
      scene: (await res.json()) as SceneDoc,
      version: res.headers.get("X-Scene-Version") ?? "",
    };
  }

  async getKnowledge(exhibitId: string): Promise<Knowledge> {
    const res = await this.request("GET", `/api/exhibits/${exhibitId}/knowledge`);
    return (await res.json()) as Knowledge;
  }

  async createSession(sessionId?: string): Promise<SessionBody> {
    const body = sessionId ? { session_id: sessionId } : {};
    const res = await this.request("POST", "/api/sessions", body, freshKey());
    return (await res.json()) as SessionBody;
  }

  async getSession(sessionId: string): Promise<SessionBody> {
    const res = await this.request("GET", `/api/sessions/${sessionId}`);
    return (await res.json()) as SessionBody;
  }

  async sendAction(sessionId: string, action: Action): Promise<SessionBody> {
    const res = await this.request(
      "POST", `/api/sessions/${sessionId}/actions`, action, freshKey());
    return (await res.json()) as SessionBody;
  }

  async submit(sessionId: string): Promise<SubmitBody> {
    const res = await this.request("POST", `/api/sessions/${sessionId}/submit`, {}, freshKey());
    return (await res.json()) as SubmitBody;
  }

  /** One transparent retry on network failure; the idempotency key makes
   * the replayed POST safe even if the first attempt actually landed. */
  private async request(
    method: string,
    path: string,
    body?: unknown,
    idempotencyKey?: string,
  ): Promise<Response> {
    const headers: Record<string, string> = {};
    let payload: string | undefined;
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    if (idempotencyKey) headers["Idempotency-Key"] = idempotencyKey;

    let res: Response;
    try {
      res = await this.fetchFn(this.baseUrl + path, { method, headers, body: payload });
    } catch (first) {
      try {
        res = await this.fetchFn(this.baseUrl + path, { method, headers, body: payload });
      } catch {
        throw new NetworkError(first);
      }
    }
    if (!res.ok) {
      let code = "unknown";
      let message = `${res.status}`;
      try {
        const err = (await res.json()) as { error?: string; message?: string };
        code = err.error ?? code;
        message = err.message ?? message;
      } catch {
        // non-JSON error body, keep the status text
      }
      throw new ApiRequestError(res.status, code, message);
    }
    return res;
  }
}
