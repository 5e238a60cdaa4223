/** Panel state machine: debounced /recommend calls with sequence-number
 * supersession, so the view never shows a response older than the one
 * already displayed. */

import { ApiClient, RecommendResponse } from "./api.js";

export const DEBOUNCE_MS = 400;

export type RequestStatus = "idle" | "pending" | "error";

export interface PanelState {
  draft: string;
  targetAge: number;
  /** Last successfully displayed response and the draft it was for. */
  lastResponse: RecommendResponse | null;
  lastResponseDraft: string | null;
  status: RequestStatus;
  errorMessage: string | null;
}

export interface SchedulerLike {
  setTimeout(fn: () => void, ms: number): unknown;
  clearTimeout(handle: unknown): void;
}

export class PanelController {
  readonly state: PanelState = {
    draft: "",
    targetAge: 8,
    lastResponse: null,
    lastResponseDraft: null,
    status: "idle",
    errorMessage: null,
  };

  private nextSequence = 0;
  private displayedSequence = -1;
  private timer: unknown = null;
  private listeners: Array<(state: PanelState) => void> = [];

  constructor(
    private readonly client: ApiClient,
    private readonly scheduler: SchedulerLike = {
      setTimeout: (fn, ms) => setTimeout(fn, ms),
      clearTimeout: (h) => clearTimeout(h as number),
    },
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  subscribe(listener: (state: PanelState) => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  setTargetAge(age: number): void {
    this.state.targetAge = age;
    this.notify();
  }

  /** Called on every keystroke; coalesces into one request per idle gap. */
  onEdit(draft: string): void {
    if (draft === this.state.draft) return; // unchanged draft: no request
    this.state.draft = draft;
    if (this.timer !== null) this.scheduler.clearTimeout(this.timer);
    this.timer = this.scheduler.setTimeout(() => {
      this.timer = null;
      void this.fire();
    }, this.debounceMs);
    this.notify();
  }

  /** Issue the request for the current draft. Stale completions (lower
   * sequence than the newest displayed) are dropped. */
  private async fire(): Promise<void> {
    const draft = this.state.draft;
    if (draft === this.state.lastResponseDraft) return; // already answered
    const sequence = this.nextSequence++;
    this.state.status = "pending";
    this.notify();
    try {
      const response = await this.client.recommend(draft);
      this.accept(sequence, draft, response);
    } catch (err) {
      if (sequence < this.displayedSequence) return; // stale failure
      this.state.status = "error";
      this.state.errorMessage = err instanceof Error ? err.message : String(err);
      // last good response is retained
      this.notify();
    }
  }

  /** Exposed for tests: apply a completed response with its sequence. */
  accept(sequence: number, draft: string, response: RecommendResponse): void {
    if (sequence <= this.displayedSequence) return; // stale: never overwrite
    this.displayedSequence = sequence;
    this.state.lastResponse = response;
    this.state.lastResponseDraft = draft;
    this.state.status = "idle";
    this.state.errorMessage = null;
    this.notify();
  }

  /** Exposed for tests: the sequence a manual request would get. */
  claimSequence(): number {
    return this.nextSequence++;
  }
}
