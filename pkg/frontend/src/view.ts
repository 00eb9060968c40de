/**
 * Pure HTML renderers for the workbench. Everything here maps a
 * DocumentView to markup strings; no DOM access, no state.
 */

import type { CandidateCard, DocumentView, SpanView } from "./model.js";

export type SpanStatus = "auto" | "confirmed" | "rejected" | "notbio";

export interface Focus {
  annotationId?: string;
  cardIndex?: number;
}

export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Collapses a span's card states into the badge shown on the span itself. */
export function spanStatus(span: SpanView): SpanStatus {
  if (span.spanState === "not_bio") {
    return "notbio";
  }
  if (span.cards.some((card) => card.state === "confirmed")) {
    return "confirmed";
  }
  if (span.cards.length > 0 && span.cards.every((card) => card.state === "rejected")) {
    return "rejected";
  }
  return "auto";
}

/** Document text with every annotated span wrapped in a <mark>. */
export function renderTextPane(view: DocumentView, focus: Focus = {}): string {
  const parts: string[] = [];
  let cursor = 0;
  for (const span of view.spans) {
    parts.push(escapeHtml(view.text.slice(cursor, span.start)));
    const classes = ["span", spanStatus(span)];
    if (span.annotationId === focus.annotationId) {
      classes.push("focused");
    }
    parts.push(
      `<mark class="${classes.join(" ")}" data-annotation="${escapeHtml(span.annotationId)}">` +
        escapeHtml(view.text.slice(span.start, span.end)) +
        "</mark>",
    );
    cursor = span.end;
  }
  parts.push(escapeHtml(view.text.slice(cursor)));
  return `<pre class="doc-text">${parts.join("")}</pre>`;
}

function renderCard(span: SpanView, card: CandidateCard, focused: boolean): string {
  const annotation = escapeHtml(span.annotationId);
  const curie = escapeHtml(card.curie);
  const classes = ["card", card.state];
  if (focused) {
    classes.push("focused");
  }
  const title = card.name !== undefined ? escapeHtml(card.name) : escapeHtml(card.localId);
  const description =
    card.description !== undefined
      ? `<p class="card-description">${escapeHtml(card.description)}</p>`
      : "";
  const rejectDisabled = span.spanState === "not_bio" ? " disabled" : "";
  return `<li class="${classes.join(" ")}" data-annotation="${annotation}" data-curie="${curie}">
  <span class="card-title">${title}</span>
  <span class="card-source">${escapeHtml(card.ontology)} ${escapeHtml(card.localId)}</span>
  <span class="card-state">${card.state}</span>
  ${description}
  <button type="button" data-action="confirm" data-annotation="${annotation}" data-curie="${curie}">Correct object</button>
  <button type="button" data-action="reject" data-annotation="${annotation}" data-curie="${curie}"${rejectDisabled}>Not this object</button>
</li>`;
}

function renderSpanSection(span: SpanView, focus: Focus): string {
  const annotation = escapeHtml(span.annotationId);
  const focusedHere = span.annotationId === focus.annotationId;
  const cards = span.cards
    .map((card, index) => renderCard(span, card, focusedHere && index === focus.cardIndex))
    .join("\n");
  const classes = ["span-section", spanStatus(span)];
  if (focusedHere) {
    classes.push("focused");
  }
  return `<section class="${classes.join(" ")}" data-annotation="${annotation}">
<header>
  <span class="span-surface">${escapeHtml(span.surface)}</span>
  <span class="span-offsets">${span.start}-${span.end}</span>
  <span class="span-status">${spanStatus(span)}</span>
  <button type="button" data-action="notbio" data-annotation="${annotation}">Not a bio object</button>
  <button type="button" data-action="deleteall" data-annotation="${annotation}">Delete all the same</button>
</header>
<ul class="cards">
${cards}
</ul>
</section>`;
}

export function renderSidebar(view: DocumentView, focus: Focus = {}): string {
  if (view.spans.length === 0) {
    return '<aside class="sidebar empty">No annotations.</aside>';
  }
  const sections = view.spans.map((span) => renderSpanSection(span, focus)).join("\n");
  return `<aside class="sidebar">\n${sections}\n</aside>`;
}

export function renderError(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}

/** Whole workbench body for one document. */
export function renderWorkbench(view: DocumentView, focus: Focus = {}): string {
  return [
    `<div class="toolbar">
  <span class="doc-id">${escapeHtml(view.docId)}</span>
  <button type="button" data-action="export">Export XML</button>
</div>`,
    renderTextPane(view, focus),
    renderSidebar(view, focus),
  ].join("\n");
}
