/** Relevance palette: three lightness steps of one blue hue.
 *
 * The invariants the tests pin down: exactly three shades, a single hue,
 * and lightness falling as relevance rises (darker block = more
 * relevant). Text colors are chosen per shade to keep WCAG AA contrast.
 */
import { LevelSlug } from "./types.js";

export interface Shade {
  h: number;
  s: number;
  l: number;
}

const HUE = 213;

export const LEVEL_SHADES: Record<LevelSlug, Shade> = {
  high: { h: HUE, s: 62, l: 30 },
  medium: { h: HUE, s: 55, l: 47 },
  low: { h: HUE, s: 58, l: 78 },
};

export const LEVEL_TEXT: Record<LevelSlug, string> = {
  high: "#ffffff",
  medium: "#ffffff",
  low: "#16243a",
};

export function shadeCss(level: LevelSlug): string {
  const { h, s, l } = LEVEL_SHADES[level];
  return `hsl(${h} ${s}% ${l}%)`;
}

export function hslToRgb({ h, s, l }: Shade): [number, number, number] {
  const sf = s / 100;
  const lf = l / 100;
  const c = (1 - Math.abs(2 * lf - 1)) * sf;
  const hp = h / 60;
  const x = c * (1 - Math.abs((hp % 2) - 1));
  const m = lf - c / 2;
  const sector = Math.floor(hp) % 6;
  const base: [number, number, number][] = [
    [c, x, 0],
    [x, c, 0],
    [0, c, x],
    [0, x, c],
    [x, 0, c],
    [c, 0, x],
  ];
  const [r, g, b] = base[sector];
  return [r + m, g + m, b + m];
}

export function parseHex(hex: string): [number, number, number] {
  const n = parseInt(hex.replace("#", ""), 16);
  return [((n >> 16) & 0xff) / 255, ((n >> 8) & 0xff) / 255, (n & 0xff) / 255];
}

export function relativeLuminance([r, g, b]: [number, number, number]): number {
  const lin = (c: number) =>
    c <= 0.03928 ? c / 12.92 : Math.pow((c + 0.055) / 1.055, 2.4);
  return 0.2126 * lin(r) + 0.7152 * lin(g) + 0.0722 * lin(b);
}

export function contrastRatio(
  a: [number, number, number],
  b: [number, number, number],
): number {
  const la = relativeLuminance(a);
  const lb = relativeLuminance(b);
  const [hi, lo] = la >= lb ? [la, lb] : [lb, la];
  return (hi + 0.05) / (lo + 0.05);
}
