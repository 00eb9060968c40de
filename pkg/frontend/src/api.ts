/**
 * Typed client for the annotation service HTTP API.
 *
 * Every mutation the workbench performs goes through this client; there
 * are no other write paths. Non-2xx responses are surfaced as
 * ServiceError with the server's own message, so callers can show it.
 */

export type CandidateState = "auto" | "confirmed" | "rejected";
export type SpanState = "active" | "not_bio";

export type DecisionAction =
  | "confirm_candidate"
  | "reject_candidate"
  | "mark_not_bio"
  | "delete_all_same";

export interface AnnotationPayload {
  annotation_id: string;
  doc_id: string;
  start: number;
  end: number;
  surface: string;
  normalized_key: string;
  candidates: string[];
  candidate_states: Record<string, CandidateState>;
  span_state: SpanState;
  updated_at: string;
}

export interface DocumentPayload {
  doc_id: string;
  text: string;
  source: string;
  annotations: AnnotationPayload[];
}

export interface SubmitResult {
  doc_id: string;
  annotations: AnnotationPayload[];
}

export interface DecisionEventPayload {
  event_id: number;
  annotation_id: string;
  action: DecisionAction;
  target: string | null;
  actor: string;
  timestamp: string;
}

export class ServiceError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) {
    return;
  }
  let message = response.statusText
    ? `${response.status} ${response.statusText}`
    : `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === "string") {
      message = body.error;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ServiceError(response.status, message);
}

export class ServiceClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    // strip a trailing slash so path joins stay predictable
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    await raiseForStatus(response);
    return (await response.json()) as T;
  }

  async health(): Promise<{ status: string; documents: number }> {
    return this.getJson("/health");
  }

  /** Submits raw text for scanning; the service assigns ids when doc_id is omitted. */
  async submitDocument(text: string, docId?: string, source = ""): Promise<SubmitResult> {
    return this.postJson("/documents", { text, doc_id: docId ?? null, source });
  }

  async fetchDocument(docId: string): Promise<DocumentPayload> {
    return this.getJson(`/documents/${encodeURIComponent(docId)}/annotations`);
  }

  /**
   * Records one reviewer decision. The response carries every annotation
   * the decision touched (delete_all_same fans out across the document).
   */
  async decide(
    annotationId: string,
    action: DecisionAction,
    target?: string,
    actor = "",
  ): Promise<AnnotationPayload[]> {
    const result = await this.postJson<{ updated: AnnotationPayload[] }>(
      `/annotations/${encodeURIComponent(annotationId)}/decision`,
      { action, target: target ?? null, actor },
    );
    return result.updated;
  }

  /** Returns the service's XML export verbatim; the UI never rewrites it. */
  async fetchExportXml(docId: string): Promise<string> {
    const response = await fetch(
      this.baseUrl + `/documents/${encodeURIComponent(docId)}/export.xml`,
    );
    await raiseForStatus(response);
    return response.text();
  }

  async fetchDecisions(since?: string): Promise<DecisionEventPayload[]> {
    const query = since ? `?since=${encodeURIComponent(since)}` : "";
    const result = await this.getJson<{ decisions: DecisionEventPayload[] }>(
      "/decisions" + query,
    );
    return result.decisions;
  }
}
