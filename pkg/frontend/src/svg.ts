/** Minimal string-based SVG construction; no DOM required. */

export type Attrs = Record<string, string | number>;

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function escapeAttr(s: string): string {
  return escapeText(s).replace(/"/g, "&quot;");
}

export function el(tag: string, attrs: Attrs = {}, ...children: string[]): string {
  const parts = Object.entries(attrs).map(([k, v]) => `${k}="${escapeAttr(String(v))}"`);
  const open = parts.length > 0 ? `<${tag} ${parts.join(" ")}` : `<${tag}`;
  if (children.length === 0) return `${open}/>`;
  return `${open}>${children.join("")}</${tag}>`;
}

export function text(tag: string, attrs: Attrs, content: string): string {
  return el(tag, attrs, escapeText(content));
}

export function polylinePoints(pts: ReadonlyArray<readonly [number, number]>): string {
  return pts.map(([x, y]) => `${round(x)},${round(y)}`).join(" ");
}

function round(v: number): number {
  return Math.round(v * 100) / 100;
}

/** Group colors; stable assignment by insertion order. */
export const PALETTE = [
  "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22",
];

export interface LinearScale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  const f = ((v: number) => r0 + (v - d0) * k) as LinearScale;
  f.domain = domain;
  f.range = range;
  return f;
}

/** Round-numbered tick positions covering a domain. */
export function ticks(lo: number, hi: number, count: number): number[] {
  if (hi === lo) return [lo];
  const span = hi - lo;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / count)));
  let step = step0;
  for (const m of [1, 2, 5, 10]) {
    if (span / (step0 * m) <= count) {
      step = step0 * m;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}
