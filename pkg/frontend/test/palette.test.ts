import { describe, expect, it } from "vitest";

import {
  LEVEL_SHADES,
  LEVEL_TEXT,
  contrastRatio,
  hslToRgb,
  parseHex,
  shadeCss,
} from "../src/palette.js";
import { LEVEL_ORDER } from "../src/types.js";

describe("relevance palette", () => {
  it("has exactly three shades, one per level", () => {
    expect(Object.keys(LEVEL_SHADES).sort()).toEqual(["high", "low", "medium"]);
  });

  it("uses a single hue", () => {
    const hues = new Set(LEVEL_ORDER.map((slug) => LEVEL_SHADES[slug].h));
    expect(hues.size).toBe(1);
  });

  it("gets lighter as relevance falls (darker = more relevant)", () => {
    expect(LEVEL_SHADES.high.l).toBeLessThan(LEVEL_SHADES.medium.l);
    expect(LEVEL_SHADES.medium.l).toBeLessThan(LEVEL_SHADES.low.l);
  });

  it("also orders by computed luminance, not just the L channel", () => {
    const [high, medium, low] = LEVEL_ORDER.map((slug) =>
      hslToRgb(LEVEL_SHADES[slug]),
    ).map((rgb) => contrastRatio(rgb, [0, 0, 0]));
    expect(high).toBeLessThan(medium);
    expect(medium).toBeLessThan(low);
  });

  it("keeps AA contrast between each shade and its text color", () => {
    for (const slug of LEVEL_ORDER) {
      const ratio = contrastRatio(
        hslToRgb(LEVEL_SHADES[slug]),
        parseHex(LEVEL_TEXT[slug]),
      );
      expect(ratio, slug).toBeGreaterThanOrEqual(4.5);
    }
  });

  it("emits css hsl() strings", () => {
    expect(shadeCss("high")).toMatch(/^hsl\(\d+ \d+% \d+%\)$/);
  });
});
