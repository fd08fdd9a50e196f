import type { SessionView } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string };
    if (body.error) message = body.error;
  } catch {
    // keep the status-line message
  }
  return new ApiError(response.status, message);
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async requestView(path: string, init?: RequestInit): Promise<SessionView> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as SessionView;
  }

  createSession(k: number): Promise<SessionView> {
    return this.requestView("/session", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ k }),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.requestView(`/session/${id}`);
  }

  flop(id: string, centers: string[]): Promise<SessionView> {
    return this.requestView(`/session/${id}/flop`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ centers }),
    });
  }

  undo(id: string): Promise<SessionView> {
    return this.requestView(`/session/${id}/undo`, { method: "POST" });
  }

  async exportDot(id: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/session/${id}/export?format=dot`);
    if (!response.ok) throw await parseError(response);
    return response.text();
  }
}
