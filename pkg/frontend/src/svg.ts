/**
 * Minimal deterministic SVG construction: fixed number formatting, no
 * timestamps, no randomness.  The same data always serializes to the same
 * bytes, which the tests pin with byte-level comparisons.
 */

/** Fixed-width float formatting: 8 significant digits, no negative zero. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  let s = x.toPrecision(8);
  if (s.includes(".") && !s.includes("e") && !s.includes("E")) {
    s = s.replace(/0+$/, "").replace(/\.$/, "");
  }
  if (s === "-0") s = "0";
  return s;
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  children: string[] = [],
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join(" ");
  const open = parts.length > 0 ? `<${tag} ${parts}>` : `<${tag}>`;
  if (children.length === 0) {
    return open.replace(/>$/, "/>");
  }
  return `${open}${children.join("")}</${tag}>`;
}

export function textEl(
  x: number,
  y: number,
  content: string,
  attrs: Record<string, string | number> = {},
): string {
  const base: Record<string, string | number> = {
    x,
    y,
    "font-family": "sans-serif",
    "font-size": 11,
    fill: "#000000",
    ...attrs,
  };
  const parts = Object.entries(base)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join(" ");
  return `<text ${parts}>${esc(content)}</text>`;
}

export class LinearScale {
  constructor(
    public readonly d0: number,
    public readonly d1: number,
    public readonly r0: number,
    public readonly r1: number,
  ) {}

  map(x: number): number {
    const span = this.d1 - this.d0;
    const t = span === 0 ? 0.5 : (x - this.d0) / span;
    return this.r0 + t * (this.r1 - this.r0);
  }
}

/** Round tick positions covering [lo, hi]; fixed algorithm, no locale. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12 * step; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * step ? 0 : v);
  }
  return ticks;
}

export function polyline(
  xs: ArrayLike<number>,
  ys: ArrayLike<number>,
  xscale: LinearScale,
  yscale: LinearScale,
  attrs: Record<string, string | number>,
): string {
  const pieces: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    const x = xs[i]!;
    const y = ys[i]!;
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      pen = false;
      continue;
    }
    pieces.push(`${pen ? "L" : "M"}${fmt(xscale.map(x))} ${fmt(yscale.map(y))}`);
    pen = true;
  }
  return el("path", { d: pieces.join(" "), fill: "none", ...attrs });
}

/**
 * Diverging color map for gain/loss fields: losses in blue, gains in yellow,
 * white at zero.  `t` in [-1, 1].
 */
export function divergingColor(t: number): string {
  const clamp = Math.max(-1, Math.min(1, Number.isFinite(t) ? t : 0));
  const mix = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number, g: number, b: number;
  if (clamp < 0) {
    const u = -clamp;
    r = mix(255, 33, u);
    g = mix(255, 102, u);
    b = mix(255, 172, u);
  } else {
    const u = clamp;
    r = mix(255, 253, u);
    g = mix(255, 231, u);
    b = mix(255, 37, u);
  }
  const hex = (v: number) => v.toString(16).padStart(2, "0");
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

export function star(cx: number, cy: number, radius: number): string {
  const points: string[] = [];
  for (let i = 0; i < 10; i++) {
    const r = i % 2 === 0 ? radius : 0.4 * radius;
    const angle = -Math.PI / 2 + (i * Math.PI) / 5;
    points.push(`${fmt(cx + r * Math.cos(angle))},${fmt(cy + r * Math.sin(angle))}`);
  }
  return el("polygon", { points: points.join(" "), fill: "#000000" });
}

export function svgDocument(
  width: number,
  height: number,
  children: string[],
): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(width)}" ` +
    `height="${fmt(height)}" viewBox="0 0 ${fmt(width)} ${fmt(height)}">` +
    `<rect x="0" y="0" width="${fmt(width)}" height="${fmt(height)}" ` +
    `fill="#ffffff"/>` +
    children.join("") +
    `</svg>\n`
  );
}
