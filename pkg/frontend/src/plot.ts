/**
 * The three plot styles: curve families, heatmaps with a colorbar, and
 * an isometric surface with an optional flat reference plane.
 */

import { SERIES_COLORS, diverging, sequential } from "./colormap.js";
import { BLACK, GREY, LIGHT_GREY, Raster, type Rgb } from "./raster.js";

export interface Grid {
  xs: number[];
  ys: number[];
  /** values[i][j] for (xs[i], ys[j]); NaN where invalid */
  values: number[][];
}

const MARGIN = { left: 64, right: 24, top: 28, bottom: 44 };
const CB_WIDTH = 18;

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  return Number(v.toPrecision(3)).toString();
}

function niceTicks(lo: number, hi: number, n = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = 10 ** Math.floor(Math.log10(span / n));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= n) ?? 10 * step;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / chosen) * chosen; t <= hi + 1e-12; t += chosen) {
    ticks.push(Math.abs(t) < 1e-12 ? 0 : t);
  }
  return ticks;
}

interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
  sx: (v: number) => number;
  sy: (v: number) => number;
}

function drawFrame(
  r: Raster,
  xlo: number,
  xhi: number,
  ylo: number,
  yhi: number,
  xLabel: string,
  yLabel: string,
  title: string,
  rightPad = 0,
): Frame {
  const x0 = MARGIN.left;
  const y0 = MARGIN.top;
  const w = r.width - MARGIN.left - MARGIN.right - rightPad;
  const h = r.height - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => x0 + ((v - xlo) / (xhi - xlo)) * w;
  const sy = (v: number) => y0 + h - ((v - ylo) / (yhi - ylo)) * h;

  r.text(x0, 10, title);
  for (const t of niceTicks(xlo, xhi)) {
    const px = Math.round(sx(t));
    r.line(px, y0 + h, px, y0 + h + 4, BLACK);
    const label = fmtTick(t);
    r.text(px - Math.floor(r.textWidth(label) / 2), y0 + h + 8, label);
  }
  for (const t of niceTicks(ylo, yhi)) {
    const py = Math.round(sy(t));
    r.line(x0 - 4, py, x0, py, BLACK);
    const label = fmtTick(t);
    r.text(x0 - 8 - r.textWidth(label), py - 3, label);
  }
  r.text(x0 + Math.floor((w - r.textWidth(xLabel)) / 2), r.height - 12,
    xLabel);
  r.text(4, y0 - 14 < 10 ? 10 : y0 - 14, yLabel);
  // frame box drawn last so it overlays cell edges
  r.line(x0, y0, x0 + w, y0, BLACK);
  r.line(x0, y0 + h, x0 + w, y0 + h, BLACK);
  r.line(x0, y0, x0, y0 + h, BLACK);
  r.line(x0 + w, y0, x0 + w, y0 + h, BLACK);
  return { x0, y0, w, h, sx, sy };
}

export function lineChart(
  r: Raster,
  xs: Float64Array,
  series: { label: string; values: Float64Array }[],
  xLabel: string,
  yLabel: string,
  title: string,
): void {
  const finite = series.flatMap((s) => [...s.values].filter(Number.isFinite));
  const ylo = Math.min(0, ...finite);
  const yhi = Math.max(...finite) * 1.05 || 1;
  const f = drawFrame(r, xs[0], xs[xs.length - 1], ylo, yhi, xLabel, yLabel,
    title);
  series.forEach((s, k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    const px: number[] = [];
    const py: number[] = [];
    for (let i = 0; i < xs.length; i += 1) {
      if (Number.isFinite(s.values[i])) {
        px.push(Math.round(f.sx(xs[i])));
        py.push(Math.round(f.sy(s.values[i])));
      }
    }
    r.polyline(px, py, color, 2);
    const ly = f.y0 + 8 + 12 * k;
    const lx = f.x0 + f.w - r.textWidth(s.label) - 30;
    r.line(lx, ly + 3, lx + 14, ly + 3, color);
    r.line(lx, ly + 4, lx + 14, ly + 4, color);
    r.text(lx + 18, ly, s.label);
  });
}

function colorFor(
  v: number,
  lo: number,
  hi: number,
  useDiverging: boolean,
): Rgb {
  if (!Number.isFinite(v)) return LIGHT_GREY;
  if (useDiverging) {
    const scale = Math.max(Math.abs(lo), Math.abs(hi), 1e-300);
    return diverging(v / scale);
  }
  return sequential(hi > lo ? (v - lo) / (hi - lo) : 0.5);
}

function drawColorbar(
  r: Raster,
  lo: number,
  hi: number,
  useDiverging: boolean,
): void {
  const x0 = r.width - MARGIN.right - CB_WIDTH;
  const y0 = MARGIN.top;
  const h = r.height - MARGIN.top - MARGIN.bottom;
  for (let y = 0; y < h; y += 1) {
    const v = hi - ((hi - lo) * y) / (h - 1);
    const c = colorFor(v, lo, hi, useDiverging);
    r.fillRect(x0, y0 + y, CB_WIDTH, 1, c);
  }
  r.line(x0, y0, x0 + CB_WIDTH, y0, BLACK);
  r.line(x0, y0 + h, x0 + CB_WIDTH, y0 + h, BLACK);
  r.line(x0, y0, x0, y0 + h, BLACK);
  r.line(x0 + CB_WIDTH, y0, x0 + CB_WIDTH, y0 + h, BLACK);
  r.text(x0 - 2, y0 - 12, fmtTick(hi));
  r.text(x0 - 2, y0 + h + 4, fmtTick(lo));
  if (useDiverging && lo < 0 && hi > 0) {
    const zy = Math.round(y0 + (hi / (hi - lo)) * h);
    r.line(x0 - 3, zy, x0 + CB_WIDTH, zy, BLACK);
    r.text(x0 + CB_WIDTH + 2, zy - 3, "0");
  }
}

export function heatmap(
  r: Raster,
  grid: Grid,
  xLabel: string,
  yLabel: string,
  title: string,
  useDiverging: boolean,
): void {
  const flat = grid.values.flat().filter(Number.isFinite);
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const f = drawFrame(r, grid.xs[0], grid.xs[grid.xs.length - 1],
    grid.ys[0], grid.ys[grid.ys.length - 1], xLabel, yLabel, title,
    CB_WIDTH + 34);
  const nx = grid.xs.length;
  const ny = grid.ys.length;
  for (let px = 0; px < f.w; px += 1) {
    const i = Math.min(nx - 1, Math.floor((px / f.w) * nx));
    for (let py = 0; py < f.h; py += 1) {
      const j = Math.min(ny - 1, Math.floor(((f.h - 1 - py) / f.h) * ny));
      r.set(f.x0 + px, f.y0 + py, colorFor(grid.values[i][j], lo, hi,
        useDiverging));
    }
  }
  drawColorbar(r, lo, hi, useDiverging);
}

export function surface(
  r: Raster,
  grid: Grid,
  xLabel: string,
  yLabel: string,
  title: string,
  reference?: number,
): void {
  const flat = grid.values.flat().filter(Number.isFinite);
  let lo = Math.min(...flat);
  let hi = Math.max(...flat);
  if (reference !== undefined) {
    lo = Math.min(lo, reference);
    hi = Math.max(hi, reference);
  }
  const nx = grid.xs.length;
  const ny = grid.ys.length;
  // isometric projection of grid indices, value on the vertical axis
  const su = (r.width - 150) / (nx + ny);
  const zh = r.height * 0.42;
  const originX = 80;
  const originY = r.height - 70;
  const px = (i: number, j: number) => originX + (i + j) * su;
  const py = (i: number, j: number, v: number) =>
    originY - (j - i) * su * 0.42
    - ((v - lo) / (hi - lo || 1)) * zh;

  r.text(originX, 10, title);
  const zRef = (v: number) => py(nx - 1, 0, v);

  // painter's order: far cells first (large i+j drawn last toward viewer)
  for (let s = nx + ny - 3; s >= 0; s -= 1) {
    for (let i = Math.min(nx - 2, s); i >= 0; i -= 1) {
      const j = s - i;
      if (j < 0 || j > ny - 2) continue;
      const vs = [grid.values[i][j], grid.values[i + 1][j],
        grid.values[i + 1][j + 1], grid.values[i][j + 1]];
      if (!vs.every(Number.isFinite)) continue;
      const mean = (vs[0] + vs[1] + vs[2] + vs[3]) / 4;
      const color = sequential((mean - lo) / (hi - lo || 1));
      const cx = [px(i, j), px(i + 1, j), px(i + 1, j + 1), px(i, j + 1)];
      const cy = [py(i, j, vs[0]), py(i + 1, j, vs[1]),
        py(i + 1, j + 1, vs[2]), py(i, j + 1, vs[3])];
      fillQuad(r, cx, cy, color);
    }
  }
  if (reference !== undefined) {
    // flat no-squeezing plane as a grey wire grid over the surface
    const step = Math.max(1, Math.floor(nx / 12));
    for (let i = 0; i < nx; i += step) {
      r.line(px(i, 0), py(i, 0, reference), px(i, ny - 1),
        py(i, ny - 1, reference), GREY);
    }
    for (let j = 0; j < ny; j += step) {
      r.line(px(0, j), py(0, j, reference), px(nx - 1, j),
        py(nx - 1, j, reference), GREY);
    }
  }
  // axes annotations
  r.line(px(0, 0), py(0, 0, lo), px(nx - 1, 0), py(nx - 1, 0, lo), BLACK);
  r.line(px(0, 0), py(0, 0, lo), px(0, ny - 1), py(0, ny - 1, lo), BLACK);
  r.text(px(nx - 1, 0) - r.textWidth(xLabel), py(nx - 1, 0, lo) + 14, xLabel);
  r.text(px(0, ny - 1) - r.textWidth(yLabel) - 6,
    py(0, ny - 1, lo) - 10, yLabel);
  r.text(8, Math.round(zRef(hi)) - 4, fmtTick(hi));
  r.text(8, Math.round(zRef(lo)) - 4, fmtTick(lo));
}

function fillQuad(r: Raster, xs: number[], ys: number[], color: Rgb): void {
  const minY = Math.max(0, Math.floor(Math.min(...ys)));
  const maxY = Math.min(r.height - 1, Math.ceil(Math.max(...ys)));
  for (let y = minY; y <= maxY; y += 1) {
    const crossings: number[] = [];
    for (let k = 0; k < 4; k += 1) {
      const [xa, ya] = [xs[k], ys[k]];
      const [xb, yb] = [xs[(k + 1) % 4], ys[(k + 1) % 4]];
      if ((ya <= y && yb > y) || (yb <= y && ya > y)) {
        crossings.push(xa + ((y - ya) / (yb - ya)) * (xb - xa));
      }
    }
    crossings.sort((a, b) => a - b);
    for (let k = 0; k + 1 < crossings.length; k += 2) {
      const x0 = Math.max(0, Math.round(crossings[k]));
      const x1 = Math.min(r.width - 1, Math.round(crossings[k + 1]));
      for (let x = x0; x <= x1; x += 1) r.set(x, y, color);
    }
  }
}
