/** Types and a thin client for the recommendation HTTP API. */

export interface SentencePrediction {
  text: string;
  lo: number;
  hi: number;
  mu: number;
}

export interface RecommendResponse {
  sentences: SentencePrediction[];
  text_level: { lo: number; hi: number; mu: number };
  model_id: string;
}

export interface HealthResponse {
  status: string;
  model_id: string;
}

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async recommend(text: string): Promise<RecommendResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/recommend`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
    const body = (await res.json()) as Record<string, unknown>;
    if (!res.ok) {
      const reason =
        typeof body?.error === "string" ? body.error : `HTTP ${res.status}`;
      throw new ApiError(res.status, reason);
    }
    return body as unknown as RecommendResponse;
  }

  async health(): Promise<HealthResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/health`);
    if (!res.ok) throw new ApiError(res.status, `HTTP ${res.status}`);
    return (await res.json()) as HealthResponse;
  }
}
