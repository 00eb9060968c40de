/**
 * Client-side document state: immutable views built from server payloads,
 * plus the pure decision transitions used for optimistic updates.
 *
 * The transitions replicate the service's own rules so an optimistic
 * apply predicts exactly what the server will answer. Reconciliation
 * afterwards replaces predicted spans with server truth.
 */

import type {
  AnnotationPayload,
  CandidateState,
  DecisionAction,
  DocumentPayload,
  SpanState,
} from "./api.js";

export interface CandidateCard {
  curie: string;
  ontology: string;
  localId: string;
  state: CandidateState;
  /** Optional ingest extensions; the wire format today carries neither. */
  name?: string;
  description?: string;
}

export interface SpanView {
  annotationId: string;
  start: number;
  end: number;
  surface: string;
  normalizedKey: string;
  spanState: SpanState;
  cards: CandidateCard[];
  updatedAt: string;
}

export interface DocumentView {
  docId: string;
  text: string;
  /** Sorted by start; never overlapping. */
  spans: SpanView[];
}

/** Splits "Ontology:LocalId" at the first colon; local ids may contain more colons. */
export function splitCurie(curie: string): { ontology: string; localId: string } {
  const cut = curie.indexOf(":");
  if (cut < 0) {
    return { ontology: "", localId: curie };
  }
  return { ontology: curie.slice(0, cut), localId: curie.slice(cut + 1) };
}

function spanFromPayload(payload: AnnotationPayload): SpanView {
  const cards = payload.candidates.map((curie): CandidateCard => {
    const { ontology, localId } = splitCurie(curie);
    return {
      curie,
      ontology,
      localId,
      state: payload.candidate_states[curie] ?? "auto",
    };
  });
  return {
    annotationId: payload.annotation_id,
    start: payload.start,
    end: payload.end,
    surface: payload.surface,
    normalizedKey: payload.normalized_key,
    spanState: payload.span_state,
    cards,
    updatedAt: payload.updated_at,
  };
}

/**
 * Builds a DocumentView from the annotations payload.
 *
 * Rejects malformed data outright instead of rendering part of it:
 * spans must stay inside the text, match its characters, carry unique
 * ids, and never overlap.
 */
export function buildView(payload: DocumentPayload): DocumentView {
  const spans = payload.annotations.map(spanFromPayload);
  spans.sort((a, b) => a.start - b.start || a.end - b.end);

  const seen = new Set<string>();
  let previousEnd = 0;
  for (const span of spans) {
    if (seen.has(span.annotationId)) {
      throw new Error(`duplicate annotation id ${span.annotationId}`);
    }
    seen.add(span.annotationId);
    if (span.start < 0 || span.end > payload.text.length || span.start >= span.end) {
      throw new Error(`span ${span.annotationId} outside document bounds`);
    }
    if (span.start < previousEnd) {
      throw new Error(`span ${span.annotationId} overlaps its predecessor`);
    }
    if (payload.text.slice(span.start, span.end) !== span.surface) {
      throw new Error(`span ${span.annotationId} does not match the document text`);
    }
    previousEnd = span.end;
  }

  return { docId: payload.doc_id, text: payload.text, spans };
}

export function findSpan(view: DocumentView, annotationId: string): SpanView | undefined {
  return view.spans.find((span) => span.annotationId === annotationId);
}

function withCardState(span: SpanView, curie: string, state: CandidateState): SpanView {
  return {
    ...span,
    cards: span.cards.map((card) => (card.curie === curie ? { ...card, state } : card)),
  };
}

function asNotBio(span: SpanView): SpanView {
  return {
    ...span,
    spanState: "not_bio",
    cards: span.cards.map((card) => ({ ...card, state: "rejected" as const })),
  };
}

/**
 * Applies one decision locally, enforcing the same preconditions the
 * service does. Throws on transitions the server would refuse, so the
 * workbench can skip a round trip that is known to fail.
 */
export function applyDecision(
  view: DocumentView,
  annotationId: string,
  action: DecisionAction,
  target?: string,
): DocumentView {
  const span = findSpan(view, annotationId);
  if (span === undefined) {
    throw new Error(`unknown annotation ${annotationId}`);
  }

  if (action === "confirm_candidate" || action === "reject_candidate") {
    if (target === undefined) {
      throw new Error(`${action} requires a target concept`);
    }
    if (!span.cards.some((card) => card.curie === target)) {
      throw new Error(`${target} is not a candidate of ${annotationId}`);
    }
    if (action === "reject_candidate" && span.spanState === "not_bio") {
      throw new Error(`${annotationId} is marked not-bio; confirming a candidate re-activates it`);
    }
  } else if (target !== undefined) {
    throw new Error(`${action} does not take a target`);
  }

  const replace = (updated: Map<string, SpanView>): DocumentView => ({
    ...view,
    spans: view.spans.map((s) => updated.get(s.annotationId) ?? s),
  });

  switch (action) {
    case "confirm_candidate": {
      const next = withCardState(span, target as string, "confirmed");
      return replace(new Map([[span.annotationId, { ...next, spanState: "active" }]]));
    }
    case "reject_candidate":
      return replace(new Map([[span.annotationId, withCardState(span, target as string, "rejected")]]));
    case "mark_not_bio":
      return replace(new Map([[span.annotationId, asNotBio(span)]]));
    case "delete_all_same": {
      // fan out over the currently-active spans sharing the anchor's key
      const updated = new Map<string, SpanView>();
      for (const sibling of view.spans) {
        if (sibling.spanState === "active" && sibling.normalizedKey === span.normalizedKey) {
          updated.set(sibling.annotationId, asNotBio(sibling));
        }
      }
      return replace(updated);
    }
  }
}

/** Replaces spans with the server's versions after a decision round trip. */
export function reconcile(view: DocumentView, updated: AnnotationPayload[]): DocumentView {
  if (updated.length === 0) {
    return view;
  }
  const byId = new Map(updated.map((payload) => [payload.annotation_id, spanFromPayload(payload)]));
  return {
    ...view,
    spans: view.spans.map((span) => byId.get(span.annotationId) ?? span),
  };
}
