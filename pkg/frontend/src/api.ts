/**
 * Fetch client for the elicitation service.
 */

import type {
  AnswerResponse,
  AnswerSymbol,
  CreateSessionResponse,
  ErrorEnvelope,
  QueryDto,
  SessionConfigDto,
  SessionLogDto,
  UtilityDto,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    public readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ServiceError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, {
      ...init,
      headers: { "content-type": "application/json", ...init?.headers },
    });
  } catch (unreachable) {
    throw new ServiceError(0, "Unreachable", String(unreachable));
  }
  const body = await response.json();
  if (!response.ok) {
    const envelope = body as ErrorEnvelope;
    throw new ServiceError(
      response.status,
      envelope.error ?? "HttpError",
      envelope.detail ?? response.statusText,
    );
  }
  return body as T;
}

export class SessionApi {
  constructor(public readonly baseUrl: string) {}

  createSession(config: SessionConfigDto): Promise<CreateSessionResponse> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      body: JSON.stringify({ config }),
    });
  }

  getQuery(sessionId: string): Promise<QueryDto> {
    return request(`${this.baseUrl}/sessions/${sessionId}/query`);
  }

  postAnswer(
    sessionId: string,
    queryId: number,
    answer: AnswerSymbol,
  ): Promise<AnswerResponse> {
    return request(`${this.baseUrl}/sessions/${sessionId}/answer`, {
      method: "POST",
      body: JSON.stringify({ query_id: queryId, answer }),
    });
  }

  getUtility(sessionId: string): Promise<UtilityDto> {
    return request(`${this.baseUrl}/sessions/${sessionId}/utility`);
  }

  getLog(sessionId: string): Promise<SessionLogDto> {
    return request(`${this.baseUrl}/sessions/${sessionId}/log`);
  }
}
