/**
 * Color scales: a blue-white-red diverging map centered at zero for
 * improvement metrics (negative regions read as blue, as in the source
 * plots) and a dark-to-bright sequential map for plain magnitudes.
 */

import type { Rgb } from "./raster.js";

const DIV_NEG: Rgb = [44, 123, 182]; // blue
const DIV_MID: Rgb = [255, 255, 255];
const DIV_POS: Rgb = [215, 25, 28]; // red

const SEQ_ANCHORS: Rgb[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

function mix(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

/** t in [-1, 1]; 0 maps exactly to white. */
export function diverging(t: number): Rgb {
  const c = Math.max(-1, Math.min(1, t));
  return c < 0 ? mix(DIV_MID, DIV_NEG, -c) : mix(DIV_MID, DIV_POS, c);
}

/** t in [0, 1]. */
export function sequential(t: number): Rgb {
  const c = Math.max(0, Math.min(1, t));
  const pos = c * (SEQ_ANCHORS.length - 1);
  const i = Math.min(Math.floor(pos), SEQ_ANCHORS.length - 2);
  return mix(SEQ_ANCHORS[i], SEQ_ANCHORS[i + 1], pos - i);
}

/** Distinct line colors for curve families. */
export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [23, 190, 207],
];
