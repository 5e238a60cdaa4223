/** Pure view-model computations: flagging, the age color scale, and the
 * text-level gauge. Kept free of DOM so they are directly testable. */

import { RecommendResponse, SentencePrediction } from "./api.js";

/** A sentence is flagged exactly when the target age is outside [lo, hi]. */
export function isFlagged(sentence: { lo: number; hi: number }, targetAge: number): boolean {
  return targetAge < sentence.lo || targetAge > sentence.hi;
}

/**
 * Color scale over mean age: 0 years = green (hue 120), 18 years = red
 * (hue 0), linear in between and clamped at the ends.
 */
export function colorForMeanAge(mu: number): string {
  const clamped = Math.min(18, Math.max(0, mu));
  const hue = Math.round(120 * (1 - clamped / 18));
  return `hsl(${hue}, 70%, 45%)`;
}

export interface SentenceView {
  text: string;
  lo: number;
  hi: number;
  mu: number;
  flagged: boolean;
  color: string;
}

export interface GaugeView {
  lo: number;
  hi: number;
  mu: number;
  targetAge: number;
  targetInside: boolean;
}

export interface PanelView {
  empty: boolean;
  sentences: SentenceView[];
  gauge: GaugeView | null;
  modelId: string | null;
}

export function buildView(
  response: RecommendResponse | null,
  targetAge: number,
): PanelView {
  if (response === null || response.sentences.length === 0) {
    return { empty: true, sentences: [], gauge: null, modelId: null };
  }
  const sentences = response.sentences.map((s: SentencePrediction) => ({
    text: s.text,
    lo: s.lo,
    hi: s.hi,
    mu: s.mu,
    flagged: isFlagged(s, targetAge),
    color: colorForMeanAge(s.mu),
  }));
  const level = response.text_level;
  return {
    empty: false,
    sentences,
    gauge: {
      lo: level.lo,
      hi: level.hi,
      mu: level.mu,
      targetAge,
      targetInside: !isFlagged(level, targetAge),
    },
    modelId: response.model_id,
  };
}
