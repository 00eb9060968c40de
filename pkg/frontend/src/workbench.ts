/**
 * The workbench controller: one document, one reviewer session.
 *
 * Holds the current DocumentView, routes button clicks and keyboard
 * shortcuts to API decisions (optimistically, with revert on failure),
 * and re-renders from state after every change. All state is local to
 * the session; reloading rebuilds it from the server alone.
 */

import type { AnnotationPayload, DecisionAction, DocumentPayload } from "./api.js";
import { applyDecision, buildView, reconcile, type DocumentView } from "./model.js";
import { withOptimistic } from "./optimistic.js";
import { renderError, renderWorkbench, type Focus } from "./view.js";

/** The slice of the service API the workbench actually calls. */
export interface WorkbenchClient {
  fetchDocument(docId: string): Promise<DocumentPayload>;
  decide(
    annotationId: string,
    action: DecisionAction,
    target?: string,
    actor?: string,
  ): Promise<AnnotationPayload[]>;
  fetchExportXml(docId: string): Promise<string>;
}

export interface WorkbenchOptions {
  root: HTMLElement;
  client: WorkbenchClient;
  actor?: string;
  /** Download hook; replaced in tests to capture the exported bytes. */
  download?: (filename: string, content: string) => void;
}

function saveFile(filename: string, content: string): void {
  const blob = new Blob([content], { type: "application/xml" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

export class Workbench {
  private readonly root: HTMLElement;
  private readonly client: WorkbenchClient;
  private readonly actor: string;
  private readonly download: (filename: string, content: string) => void;

  private view: DocumentView | null = null;
  private focus: Focus = {};
  private errorMessage: string | null = null;

  private readonly onClick = (event: Event): void => {
    const target = event.target as HTMLElement | null;
    const button = target?.closest?.("[data-action]") as HTMLElement | null;
    if (!button || button.hasAttribute("disabled")) {
      return;
    }
    void this.runAction(
      button.dataset.action ?? "",
      button.dataset.annotation,
      button.dataset.curie,
    );
  };

  private readonly onKeydown = (event: KeyboardEvent): void => {
    if (this.view === null) {
      return;
    }
    switch (event.key) {
      case "n":
        this.moveSpanFocus(1);
        break;
      case "p":
        this.moveSpanFocus(-1);
        break;
      case "ArrowDown":
        this.moveCardFocus(1);
        break;
      case "ArrowUp":
        this.moveCardFocus(-1);
        break;
      case "c":
        void this.actOnFocusedCard("confirm_candidate");
        break;
      case "x":
        void this.actOnFocusedCard("reject_candidate");
        break;
      default:
        return;
    }
    event.preventDefault();
  };

  constructor(options: WorkbenchOptions) {
    this.root = options.root;
    this.client = options.client;
    this.actor = options.actor ?? "";
    this.download = options.download ?? saveFile;
    this.root.addEventListener("click", this.onClick);
    this.root.ownerDocument.addEventListener("keydown", this.onKeydown);
  }

  dispose(): void {
    this.root.removeEventListener("click", this.onClick);
    this.root.ownerDocument.removeEventListener("keydown", this.onKeydown);
  }

  /** The last rendered view; server truth plus any in-flight optimistic apply. */
  get currentView(): DocumentView | null {
    return this.view;
  }

  get currentError(): string | null {
    return this.errorMessage;
  }

  /**
   * Loads a document and renders it. On any failure nothing of the
   * document is shown, only the error banner.
   */
  async load(docId: string): Promise<void> {
    try {
      const payload = await this.client.fetchDocument(docId);
      this.view = buildView(payload);
      this.focus = this.view.spans.length > 0 ? { annotationId: this.view.spans[0]!.annotationId, cardIndex: 0 } : {};
      this.errorMessage = null;
    } catch (error) {
      this.view = null;
      this.focus = {};
      this.errorMessage = error instanceof Error ? error.message : String(error);
    }
    this.render();
  }

  /** Applies a decision optimistically and reconciles with the server. */
  async act(annotationId: string, action: DecisionAction, target?: string): Promise<void> {
    const before = this.view;
    if (before === null) {
      return;
    }
    let predicted: DocumentView;
    try {
      predicted = applyDecision(before, annotationId, action, target);
    } catch (error) {
      // the server would refuse this transition; report without a round trip
      this.errorMessage = error instanceof Error ? error.message : String(error);
      this.render();
      return;
    }
    await withOptimistic<AnnotationPayload[]>({
      apply: () => {
        this.view = predicted;
        this.errorMessage = null;
        this.render();
      },
      remote: () => this.client.decide(annotationId, action, target, this.actor),
      reconcile: (updated) => {
        this.view = reconcile(this.view ?? predicted, updated);
        this.render();
      },
      revert: () => {
        this.view = before;
      },
      onError: (error) => {
        this.errorMessage = error.message;
        this.render();
      },
    });
  }

  /** Downloads the service's XML export for the loaded document, verbatim. */
  async exportXml(): Promise<void> {
    if (this.view === null) {
      return;
    }
    try {
      const xml = await this.client.fetchExportXml(this.view.docId);
      this.download(`${this.view.docId}.xml`, xml);
      this.errorMessage = null;
    } catch (error) {
      this.errorMessage = error instanceof Error ? error.message : String(error);
    }
    this.render();
  }

  private async runAction(action: string, annotationId?: string, curie?: string): Promise<void> {
    if (action === "export") {
      await this.exportXml();
      return;
    }
    if (annotationId === undefined) {
      return;
    }
    this.focusSpan(annotationId);
    switch (action) {
      case "confirm":
        await this.act(annotationId, "confirm_candidate", curie);
        break;
      case "reject":
        await this.act(annotationId, "reject_candidate", curie);
        break;
      case "notbio":
        await this.act(annotationId, "mark_not_bio");
        break;
      case "deleteall":
        await this.act(annotationId, "delete_all_same");
        break;
      default:
        break;
    }
  }

  private focusSpan(annotationId: string): void {
    if (this.focus.annotationId !== annotationId) {
      this.focus = { annotationId, cardIndex: 0 };
    }
  }

  private moveSpanFocus(delta: number): void {
    const spans = this.view?.spans ?? [];
    if (spans.length === 0) {
      return;
    }
    const index = spans.findIndex((span) => span.annotationId === this.focus.annotationId);
    const next = index < 0 ? 0 : (index + delta + spans.length) % spans.length;
    this.focus = { annotationId: spans[next]!.annotationId, cardIndex: 0 };
    this.render();
  }

  private moveCardFocus(delta: number): void {
    const span = this.view?.spans.find((s) => s.annotationId === this.focus.annotationId);
    if (span === undefined || span.cards.length === 0) {
      return;
    }
    const current = this.focus.cardIndex ?? 0;
    const next = (current + delta + span.cards.length) % span.cards.length;
    this.focus = { ...this.focus, cardIndex: next };
    this.render();
  }

  private async actOnFocusedCard(action: "confirm_candidate" | "reject_candidate"): Promise<void> {
    const span = this.view?.spans.find((s) => s.annotationId === this.focus.annotationId);
    const card = span?.cards[this.focus.cardIndex ?? 0];
    if (span === undefined || card === undefined) {
      return;
    }
    await this.act(span.annotationId, action, card.curie);
  }

  private render(): void {
    const banner = this.errorMessage !== null ? renderError(this.errorMessage) : "";
    if (this.view === null) {
      this.root.innerHTML = banner;
      return;
    }
    this.root.innerHTML = banner + renderWorkbench(this.view, this.focus);
  }
}
