import type { TriageResponse, VerdictAck, VerdictPayload } from "./types";

export class ApiError extends Error {
  constructor(message: string, readonly status = 0) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(`service unreachable: ${String(err)}`);
  }
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && body.detail) detail = `${response.status}: ${body.detail}`;
    } catch {
      /* non-json error body */
    }
    throw new ApiError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class TriageApi {
  constructor(readonly base = "") {}

  listRuns(): Promise<{ runs: string[] }> {
    return request(`${this.base}/runs`);
  }

  fetchQueue(runId: string, status = "pending"): Promise<TriageResponse> {
    return request(`${this.base}/runs/${encodeURIComponent(runId)}/triage?status=${status}`);
  }

  submitVerdict(runId: string, verdict: VerdictPayload): Promise<VerdictAck> {
    return request(`${this.base}/runs/${encodeURIComponent(runId)}/verdicts`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(verdict),
    });
  }
}
