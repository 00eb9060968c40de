import { describe, expect, it } from "vitest";

import type { AnnotationPayload, DocumentPayload } from "../src/api.js";
import { applyDecision, buildView, findSpan, reconcile, splitCurie } from "../src/model.js";

function annotation(overrides: Partial<AnnotationPayload> = {}): AnnotationPayload {
  return {
    annotation_id: "a1",
    doc_id: "doc-1",
    start: 0,
    end: 15,
    surface: "Carbon monoxide",
    normalized_key: "carbon monoxide",
    candidates: ["ChEBI:CHEBI:17245", "MeSH:D002248"],
    candidate_states: { "ChEBI:CHEBI:17245": "auto", "MeSH:D002248": "auto" },
    span_state: "active",
    updated_at: "2026-01-01T00:00:00+00:00",
    ...overrides,
  };
}

function document(annotations: AnnotationPayload[], text: string): DocumentPayload {
  return { doc_id: "doc-1", text, source: "", annotations };
}

const TEXT = "Carbon monoxide, again carbon monoxide, and CO.";

function twoSpanDoc(): DocumentPayload {
  return document(
    [
      annotation(),
      annotation({
        annotation_id: "a2",
        start: 23,
        end: 38,
        surface: "carbon monoxide",
      }),
      annotation({
        annotation_id: "a3",
        start: 44,
        end: 46,
        surface: "CO",
        normalized_key: "co",
        candidates: ["ChEBI:CHEBI:17245"],
        candidate_states: { "ChEBI:CHEBI:17245": "auto" },
      }),
    ],
    TEXT,
  );
}

describe("splitCurie", () => {
  it("splits at the first colon only", () => {
    expect(splitCurie("ChEBI:CHEBI:17245")).toEqual({ ontology: "ChEBI", localId: "CHEBI:17245" });
    expect(splitCurie("MeSH:D002248")).toEqual({ ontology: "MeSH", localId: "D002248" });
  });

  it("treats a colon-free id as local only", () => {
    expect(splitCurie("bare")).toEqual({ ontology: "", localId: "bare" });
  });
});

describe("buildView", () => {
  it("sorts spans by start and keeps card order from the payload", () => {
    const payload = twoSpanDoc();
    payload.annotations.reverse();
    const view = buildView(payload);
    expect(view.spans.map((s) => s.annotationId)).toEqual(["a1", "a2", "a3"]);
    expect(view.spans[0]!.cards.map((c) => c.curie)).toEqual([
      "ChEBI:CHEBI:17245",
      "MeSH:D002248",
    ]);
  });

  it("parses curies onto the cards", () => {
    const view = buildView(twoSpanDoc());
    const card = view.spans[0]!.cards[0]!;
    expect(card.ontology).toBe("ChEBI");
    expect(card.localId).toBe("CHEBI:17245");
    expect(card.state).toBe("auto");
    expect(card.name).toBeUndefined();
  });

  it("accepts a document with no annotations", () => {
    const view = buildView(document([], "plain text"));
    expect(view.spans).toEqual([]);
    expect(view.text).toBe("plain text");
  });

  it("rejects overlapping spans", () => {
    const payload = document(
      [annotation(), annotation({ annotation_id: "a2", start: 7, end: 15, surface: "monoxide" })],
      TEXT,
    );
    expect(() => buildView(payload)).toThrow(/overlaps/);
  });

  it("rejects spans that disagree with the text", () => {
    const payload = document([annotation({ surface: "Carbon dioxide!" })], TEXT);
    expect(() => buildView(payload)).toThrow(/does not match/);
  });

  it("rejects spans outside the text and duplicate ids", () => {
    expect(() => buildView(document([annotation({ end: 900 })], TEXT))).toThrow(/bounds/);
    expect(() =>
      buildView(document([annotation(), annotation()], TEXT)),
    ).toThrow(/duplicate/);
  });
});

describe("applyDecision", () => {
  it("confirm marks one card and leaves the others auto", () => {
    const view = buildView(twoSpanDoc());
    const next = applyDecision(view, "a1", "confirm_candidate", "ChEBI:CHEBI:17245");
    const cards = findSpan(next, "a1")!.cards;
    expect(cards.map((c) => c.state)).toEqual(["confirmed", "auto"]);
    // untouched spans keep their identity
    expect(findSpan(next, "a2")).toBe(findSpan(view, "a2"));
  });

  it("confirm re-activates a not-bio span", () => {
    let view = buildView(twoSpanDoc());
    view = applyDecision(view, "a1", "mark_not_bio");
    expect(findSpan(view, "a1")!.spanState).toBe("not_bio");
    view = applyDecision(view, "a1", "confirm_candidate", "MeSH:D002248");
    expect(findSpan(view, "a1")!.spanState).toBe("active");
  });

  it("reject marks only the targeted card", () => {
    const view = buildView(twoSpanDoc());
    const next = applyDecision(view, "a1", "reject_candidate", "MeSH:D002248");
    expect(findSpan(next, "a1")!.cards.map((c) => c.state)).toEqual(["auto", "rejected"]);
  });

  it("reject on a not-bio span is refused, like the service's conflict", () => {
    let view = buildView(twoSpanDoc());
    view = applyDecision(view, "a1", "mark_not_bio");
    expect(() => applyDecision(view, "a1", "reject_candidate", "MeSH:D002248")).toThrow(
      /not-bio/,
    );
  });

  it("mark_not_bio rejects every candidate of the span", () => {
    const view = buildView(twoSpanDoc());
    const next = applyDecision(view, "a3", "mark_not_bio");
    const span = findSpan(next, "a3")!;
    expect(span.spanState).toBe("not_bio");
    expect(span.cards.every((c) => c.state === "rejected")).toBe(true);
  });

  it("delete_all_same fans out over active spans with the same key", () => {
    const view = buildView(twoSpanDoc());
    const next = applyDecision(view, "a2", "delete_all_same");
    expect(findSpan(next, "a1")!.spanState).toBe("not_bio");
    expect(findSpan(next, "a2")!.spanState).toBe("not_bio");
    // different normalized key, untouched
    expect(findSpan(next, "a3")!.spanState).toBe("active");
  });

  it("delete_all_same skips spans already marked not-bio", () => {
    let view = buildView(twoSpanDoc());
    view = applyDecision(view, "a1", "mark_not_bio");
    const before = findSpan(view, "a1")!;
    const next = applyDecision(view, "a2", "delete_all_same");
    expect(findSpan(next, "a1")).toBe(before);
  });

  it("validates targets the way the service does", () => {
    const view = buildView(twoSpanDoc());
    expect(() => applyDecision(view, "a1", "confirm_candidate")).toThrow(/requires a target/);
    expect(() => applyDecision(view, "a1", "confirm_candidate", "ICD10:X47")).toThrow(
      /not a candidate/,
    );
    expect(() => applyDecision(view, "a1", "mark_not_bio", "MeSH:D002248")).toThrow(
      /does not take a target/,
    );
    expect(() => applyDecision(view, "zzz", "mark_not_bio")).toThrow(/unknown annotation/);
  });

  it("never mutates the input view", () => {
    const view = buildView(twoSpanDoc());
    const frozen = JSON.stringify(view);
    applyDecision(view, "a2", "delete_all_same");
    applyDecision(view, "a1", "confirm_candidate", "MeSH:D002248");
    expect(JSON.stringify(view)).toBe(frozen);
  });
});

describe("reconcile", () => {
  it("replaces exactly the spans the server reports", () => {
    const view = buildView(twoSpanDoc());
    const updated = annotation({
      candidate_states: { "ChEBI:CHEBI:17245": "confirmed", "MeSH:D002248": "rejected" },
      updated_at: "2026-01-02T00:00:00+00:00",
    });
    const next = reconcile(view, [updated]);
    expect(findSpan(next, "a1")!.cards.map((c) => c.state)).toEqual(["confirmed", "rejected"]);
    expect(findSpan(next, "a1")!.updatedAt).toBe("2026-01-02T00:00:00+00:00");
    expect(findSpan(next, "a2")).toBe(findSpan(view, "a2"));
  });

  it("with no updates returns the view unchanged", () => {
    const view = buildView(twoSpanDoc());
    expect(reconcile(view, [])).toBe(view);
  });
});
