import { describe, expect, it } from "vitest";

import { RecommendResponse } from "./api.js";
import { buildView, colorForMeanAge, isFlagged } from "./render.js";

const fixture: RecommendResponse = {
  sentences: [
    { text: "Le chat dort.", lo: 4.7, hi: 7.4, mu: 6.05 },
    { text: "La jurisprudence est complexe.", lo: 7.4, hi: 11.5, mu: 9.45 },
  ],
  text_level: { lo: 6.05, hi: 9.45, mu: 7.75 },
  model_id: "fixture-model",
};

describe("flagging rule", () => {
  it("is exactly 'target outside [lo, hi]'", () => {
    const s = { lo: 4.7, hi: 7.4 };
    expect(isFlagged(s, 6)).toBe(false); // inside
    expect(isFlagged(s, 4.7)).toBe(false); // boundary counts as inside
    expect(isFlagged(s, 7.4)).toBe(false);
    expect(isFlagged(s, 4.6999)).toBe(true);
    expect(isFlagged(s, 7.4001)).toBe(true);
    expect(isFlagged({ lo: 7.4, hi: 11.5 }, 6)).toBe(true);
  });

  it("matches brute-force containment over a fixture grid", () => {
    for (const s of fixture.sentences) {
      for (let target = 0; target <= 18; target += 0.25) {
        expect(isFlagged(s, target)).toBe(!(target >= s.lo && target <= s.hi));
      }
    }
  });
});

describe("color scale", () => {
  it("is green at 0, red at 18, and clamped outside", () => {
    expect(colorForMeanAge(0)).toBe("hsl(120, 70%, 45%)");
    expect(colorForMeanAge(18)).toBe("hsl(0, 70%, 45%)");
    expect(colorForMeanAge(-3)).toBe(colorForMeanAge(0));
    expect(colorForMeanAge(25)).toBe(colorForMeanAge(18));
  });

  it("is monotone in mean age", () => {
    const hue = (mu: number) =>
      Number(colorForMeanAge(mu).match(/hsl\((\d+)/)![1]);
    for (let mu = 0; mu < 18; mu += 1) {
      expect(hue(mu + 1)).toBeLessThanOrEqual(hue(mu));
    }
  });
});

describe("buildView", () => {
  it("flags only sentences excluding the target", () => {
    const view = buildView(fixture, 6);
    expect(view.sentences.map((s) => s.flagged)).toEqual([false, true]);
  });

  it("gauge reports whether the target fits the text level", () => {
    expect(buildView(fixture, 7).gauge!.targetInside).toBe(true);
    expect(buildView(fixture, 5).gauge!.targetInside).toBe(false);
  });

  it("empty response gives the empty state", () => {
    const view = buildView(null, 8);
    expect(view.empty).toBe(true);
    expect(view.sentences).toEqual([]);
    expect(view.gauge).toBeNull();
    const noSentences = buildView(
      { sentences: [], text_level: { lo: 0, hi: 0, mu: 0 }, model_id: "m" },
      8,
    );
    expect(noSentences.empty).toBe(true);
  });
});
