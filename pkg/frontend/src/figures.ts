/**
 * The three figure kinds over the sweep CSV interface.
 *
 * Conventions (pinned by tests): real parts blue, imaginary parts red;
 * reduced-model results as dots on top of exact-solver lines; gain maps use
 * the blue/white/yellow diverging scale; the phase-scan figure draws a black
 * dashed zero-gain line and black stars at equal-gain crossings.
 */

import {
  axisValues,
  checkHashesMatch,
  column,
  requireColumns,
  SchemaMismatch,
  SweepTable,
} from "./csv.js";
import {
  divergingColor,
  el,
  fmt,
  LinearScale,
  niceTicks,
  polyline,
  star,
  svgDocument,
  textEl,
} from "./svg.js";

export const BLUE = "#1f4fa0";
export const RED = "#c62828";

const PANEL_W = 320;
const PANEL_H = 240;
const MARGIN = { left: 58, right: 16, top: 30, bottom: 42 };

/** Equal-gain crossings below this response level are trapping phases. */
const RESPONSE_FLOOR = 1e-6;

interface Panel {
  x0: number;
  y0: number;
  title: string;
  xlabel: string;
  ylabel: string;
  xscale: LinearScale;
  yscale: LinearScale;
  body: string[];
}

function frame(panel: Panel): string {
  const { x0, y0, xscale, yscale } = panel;
  const parts: string[] = [];
  parts.push(el("rect", {
    x: x0 + MARGIN.left,
    y: y0 + MARGIN.top,
    width: PANEL_W - MARGIN.left - MARGIN.right,
    height: PANEL_H - MARGIN.top - MARGIN.bottom,
    fill: "none",
    stroke: "#000000",
    "stroke-width": 1,
  }));
  for (const t of niceTicks(xscale.d0, xscale.d1)) {
    const px = xscale.map(t);
    parts.push(el("line", {
      x1: px, y1: y0 + PANEL_H - MARGIN.bottom,
      x2: px, y2: y0 + PANEL_H - MARGIN.bottom + 4,
      stroke: "#000000", "stroke-width": 1,
    }));
    parts.push(textEl(px, y0 + PANEL_H - MARGIN.bottom + 16, fmt(t),
                      { "text-anchor": "middle" }));
  }
  for (const t of niceTicks(yscale.d0, yscale.d1)) {
    const py = yscale.map(t);
    parts.push(el("line", {
      x1: x0 + MARGIN.left - 4, y1: py,
      x2: x0 + MARGIN.left, y2: py,
      stroke: "#000000", "stroke-width": 1,
    }));
    parts.push(textEl(x0 + MARGIN.left - 7, py + 3, fmt(t),
                      { "text-anchor": "end" }));
  }
  parts.push(textEl(x0 + PANEL_W / 2, y0 + 16, panel.title,
                    { "text-anchor": "middle", "font-size": 12 }));
  parts.push(textEl(x0 + PANEL_W / 2, y0 + PANEL_H - 8, panel.xlabel,
                    { "text-anchor": "middle" }));
  parts.push(
    `<g transform="translate(${fmt(x0 + 14)} ${fmt(y0 + PANEL_H / 2)}) rotate(-90)">` +
    textEl(0, 0, panel.ylabel, { "text-anchor": "middle" }) + `</g>`,
  );
  return parts.join("") + panel.body.join("");
}

function makePanel(
  x0: number,
  y0: number,
  title: string,
  xlabel: string,
  ylabel: string,
  xdom: [number, number],
  ydom: [number, number],
): Panel {
  return {
    x0, y0, title, xlabel, ylabel,
    xscale: new LinearScale(xdom[0], xdom[1], x0 + MARGIN.left,
                            x0 + PANEL_W - MARGIN.right),
    yscale: new LinearScale(ydom[0], ydom[1], y0 + PANEL_H - MARGIN.bottom,
                            y0 + MARGIN.top),
    body: [],
  };
}

function finiteExtent(arrays: ArrayLike<number>[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const arr of arrays) {
    for (let i = 0; i < arr.length; i++) {
      const v = arr[i]!;
      if (Number.isFinite(v)) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
  }
  if (!(hi > lo)) return [0, 1];
  const pad = 0.06 * (hi - lo);
  return [lo - pad, hi + pad];
}

function maskRows(
  table: SweepTable,
  axis: string,
  value: number,
): number[] {
  const col = column(table, axis);
  const rows: number[] = [];
  for (let i = 0; i < table.rows; i++) {
    if (col[i] === value) rows.push(i);
  }
  return rows;
}

function take(col: Float64Array, rows: number[]): Float64Array {
  const out = new Float64Array(rows.length);
  rows.forEach((r, i) => (out[i] = col[r]!));
  return out;
}

function dots(
  xs: ArrayLike<number>,
  ys: ArrayLike<number>,
  xscale: LinearScale,
  yscale: LinearScale,
  color: string,
  every: number,
): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i += every) {
    const x = xs[i]!;
    const y = ys[i]!;
    if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
    parts.push(el("circle", {
      cx: xscale.map(x), cy: yscale.map(y), r: 2.2,
      fill: color, stroke: "none",
    }));
  }
  return parts.join("");
}

/** Four-panel overlay: each probe coherence at each of two loop phases. */
export function renderOverlay(tables: SweepTable[]): string {
  checkHashesMatch(tables);
  const table = tables[0];
  if (table === undefined) throw new SchemaMismatch("no input tables");
  requireColumns(table, [
    "delta4", "phi0",
    "rho14_re_exact", "rho14_im_exact", "rho24_re_exact", "rho24_im_exact",
    "rho14_re_effective", "rho14_im_effective",
    "rho24_re_effective", "rho24_im_effective",
  ]);
  const phases = axisValues(table, "phi0");
  if (phases.length < 1) throw new SchemaMismatch("no phi0 values", "phi0");
  const panels: string[] = [];
  const legs: Array<"rho14" | "rho24"> = ["rho14", "rho24"];
  legs.forEach((leg, row) => {
    phases.slice(0, 2).forEach((phi, colIdx) => {
      const rows = maskRows(table, "phi0", phi);
      const x = take(column(table, "delta4"), rows);
      const reE = take(column(table, `${leg}_re_exact`), rows);
      const imE = take(column(table, `${leg}_im_exact`), rows);
      const reA = take(column(table, `${leg}_re_effective`), rows);
      const imA = take(column(table, `${leg}_im_effective`), rows);
      const panel = makePanel(
        colIdx * PANEL_W, row * PANEL_H,
        `${leg} at phi0=${fmt(phi)}`,
        "delta4 (units of gamma3)", leg,
        [x[0] ?? 0, x[x.length - 1] ?? 1],
        finiteExtent([reE, imE, reA, imA]),
      );
      panel.body.push(
        polyline(x, reE, panel.xscale, panel.yscale,
                 { stroke: BLUE, "stroke-width": 1.5 }),
        polyline(x, imE, panel.xscale, panel.yscale,
                 { stroke: RED, "stroke-width": 1.5 }),
        dots(x, reA, panel.xscale, panel.yscale, BLUE, 10),
        dots(x, imA, panel.xscale, panel.yscale, RED, 10),
      );
      panels.push(frame(panel));
    });
  });
  const ncols = Math.min(phases.length, 2);
  return svgDocument(ncols * PANEL_W, 2 * PANEL_H, panels);
}

/** Two gain maps over (delta4, phi0), one per probe leg. */
export function renderHeatmap(tables: SweepTable[]): string {
  checkHashesMatch(tables);
  const table = tables[0];
  if (table === undefined) throw new SchemaMismatch("no input tables");
  requireColumns(table, ["delta4", "phi0", "alpha14_exact", "alpha24_exact"]);
  const xs = axisValues(table, "delta4");
  const ys = axisValues(table, "phi0");
  if (xs.length < 2 || ys.length < 2) {
    throw new SchemaMismatch("heatmap needs a 2-D grid");
  }
  const a14 = column(table, "alpha14_exact");
  const a24 = column(table, "alpha24_exact");
  let scale = 0;
  for (let i = 0; i < table.rows; i++) {
    const v = Math.max(Math.abs(a14[i]!), Math.abs(a24[i]!));
    if (Number.isFinite(v) && v > scale) scale = v;
  }
  if (scale === 0) scale = 1;
  const d4 = column(table, "delta4");
  const p0 = column(table, "phi0");
  const panels: string[] = [];
  (["alpha14_exact", "alpha24_exact"] as const).forEach((name, idx) => {
    const values = column(table, name);
    const panel = makePanel(
      idx * PANEL_W, 0, `${name.replace("_exact", "")} (1/m)`,
      "delta4 (units of gamma3)", "phi0 (rad)",
      [xs[0]!, xs[xs.length - 1]!], [ys[0]!, ys[ys.length - 1]!],
    );
    const cellW = (PANEL_W - MARGIN.left - MARGIN.right) / xs.length;
    const cellH = (PANEL_H - MARGIN.top - MARGIN.bottom) / ys.length;
    const cells: string[] = [];
    for (let i = 0; i < table.rows; i++) {
      const xi = xs.indexOf(d4[i]!);
      const yi = ys.indexOf(p0[i]!);
      cells.push(el("rect", {
        x: panel.x0 + MARGIN.left + xi * cellW,
        y: panel.y0 + PANEL_H - MARGIN.bottom - (yi + 1) * cellH,
        width: cellW + 0.5,
        height: cellH + 0.5,
        fill: divergingColor(values[i]! / scale),
        stroke: "none",
      }));
    }
    panel.body.push(...cells);
    panels.push(frame(panel));
  });
  return svgDocument(2 * PANEL_W, PANEL_H, panels);
}

export interface Crossing {
  phi0: number;
  gain: number;
}

/** Sign changes of alpha14 - alpha24 with a real medium response. */
export function findCrossings(
  phi: ArrayLike<number>,
  a14: ArrayLike<number>,
  a24: ArrayLike<number>,
): Crossing[] {
  const out: Crossing[] = [];
  for (let i = 0; i + 1 < phi.length; i++) {
    const g0 = a14[i]! - a24[i]!;
    const g1 = a14[i + 1]! - a24[i + 1]!;
    if (!Number.isFinite(g0) || !Number.isFinite(g1)) continue;
    if (g0 === 0 || g0 * g1 < 0) {
      const t = g0 === 0 ? 0 : g0 / (g0 - g1);
      const p = phi[i]! + t * (phi[i + 1]! - phi[i]!);
      const v14 = a14[i]! + t * (a14[i + 1]! - a14[i]!);
      const v24 = a24[i]! + t * (a24[i + 1]! - a24[i]!);
      if (Math.max(Math.abs(v14), Math.abs(v24)) <= RESPONSE_FLOOR) continue;
      out.push({ phi0: p, gain: 0.5 * (v14 + v24) });
    }
  }
  return out;
}

/** Gain versus loop phase with the zero line and starred crossings. */
export function renderCrossing(tables: SweepTable[]): string {
  checkHashesMatch(tables);
  const table = tables[0];
  if (table === undefined) throw new SchemaMismatch("no input tables");
  requireColumns(table, ["phi0", "alpha14_exact", "alpha24_exact"]);
  const phi = column(table, "phi0");
  const a14 = column(table, "alpha14_exact");
  const a24 = column(table, "alpha24_exact");
  const panel = makePanel(
    0, 0, "gain vs closed-loop phase", "phi0 (rad)", "alpha (1/m)",
    [phi[0] ?? 0, phi[phi.length - 1] ?? 1], finiteExtent([a14, a24]),
  );
  const zeroY = panel.yscale.map(0);
  panel.body.push(
    el("line", {
      x1: panel.xscale.r0, y1: zeroY, x2: panel.xscale.r1, y2: zeroY,
      stroke: "#000000", "stroke-width": 1, "stroke-dasharray": "6 4",
    }),
    polyline(phi, a14, panel.xscale, panel.yscale,
             { stroke: BLUE, "stroke-width": 1.5 }),
    polyline(phi, a24, panel.xscale, panel.yscale,
             { stroke: RED, "stroke-width": 1.5 }),
  );
  for (const c of findCrossings(phi, a14, a24)) {
    panel.body.push(star(panel.xscale.map(c.phi0), panel.yscale.map(c.gain), 6));
  }
  panel.body.push(
    textEl(panel.xscale.r0 + 8, MARGIN.top + 14, "alpha14", { fill: BLUE }),
    textEl(panel.xscale.r0 + 64, MARGIN.top + 14, "alpha24", { fill: RED }),
  );
  return svgDocument(PANEL_W, PANEL_H, [frame(panel)]);
}

export type FigureKind = "overlay" | "heatmap" | "crossing";

export const PRESET_KINDS: Record<string, FigureKind> = {
  fig2: "overlay",
  fig3: "heatmap",
  fig4: "crossing",
};

export function render(kind: FigureKind, tables: SweepTable[]): string {
  switch (kind) {
    case "overlay":
      return renderOverlay(tables);
    case "heatmap":
      return renderHeatmap(tables);
    case "crossing":
      return renderCrossing(tables);
  }
}
