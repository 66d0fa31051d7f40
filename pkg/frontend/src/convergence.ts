/** Convergence plots: mean best-so-far per evaluation with a 95% band. */

import { Group } from "./runset.js";
import { bestSoFar, mean, meanCI95 } from "./stats.js";
import { el, linearScale, PALETTE, polylinePoints, text, ticks } from "./svg.js";

export interface ConvergenceCurve {
  label: string;
  /** Index k holds stats over runs of best-so-far at evaluation k+1. */
  mean: number[];
  lo: number[];
  hi: number[];
}

/** Per-evaluation mean and 95% t-interval of the best-so-far curves. */
export function convergenceCurve(group: Group): ConvergenceCurve {
  const curves = group.runs.map((r) => bestSoFar(r.rows.map((row) => row.f)));
  const out: ConvergenceCurve = { label: group.label, mean: [], lo: [], hi: [] };
  for (let k = 0; k < group.budget; k++) {
    const column = curves.map((c) => c[k]!);
    if (column.length >= 2) {
      const ci = meanCI95(column);
      out.mean.push(ci.mean);
      out.lo.push(ci.lo);
      out.hi.push(ci.hi);
    } else {
      const m = mean(column);
      out.mean.push(m);
      out.lo.push(m);
      out.hi.push(m);
    }
  }
  return out;
}

export interface ConvergenceOptions {
  /** Draw a horizontal reference line at this objective value. */
  greedyF?: number;
  width?: number;
  height?: number;
  title?: string;
}

const MARGIN = { top: 36, right: 24, bottom: 44, left: 64 };

export function convergencePlot(groups: Group[], opts: ConvergenceOptions = {}): string {
  const drawable = groups.filter((g) => g.runs.length >= 2);
  for (const g of groups) {
    if (g.runs.length < 2) {
      console.warn(`skipping group ${g.instance}/${g.label}: fewer than 2 runs`);
    }
  }
  if (drawable.length === 0) throw new Error("no group has at least 2 runs");

  const width = opts.width ?? 720;
  const height = opts.height ?? 440;
  const curves = drawable.map(convergenceCurve);
  const budget = Math.max(...drawable.map((g) => g.budget));

  let yLo = Math.min(...curves.map((c) => Math.min(...c.lo)));
  let yHi = Math.max(...curves.map((c) => Math.max(...c.hi)));
  if (opts.greedyF !== undefined) {
    yLo = Math.min(yLo, opts.greedyF);
    yHi = Math.max(yHi, opts.greedyF);
  }
  const pad = (yHi - yLo) * 0.05 || 1;
  const x = linearScale([1, budget], [MARGIN.left, width - MARGIN.right]);
  const y = linearScale([yLo - pad, yHi + pad], [height - MARGIN.bottom, MARGIN.top]);

  const parts: string[] = [];
  parts.push(el("rect", { x: 0, y: 0, width, height, fill: "white" }));

  for (const tv of ticks(y.domain[0], y.domain[1], 6)) {
    parts.push(el("line", {
      x1: MARGIN.left, x2: width - MARGIN.right, y1: y(tv), y2: y(tv),
      stroke: "#ddd", "stroke-width": 1,
    }));
    parts.push(text("text", {
      x: MARGIN.left - 8, y: y(tv) + 4, "text-anchor": "end",
      "font-size": 12, fill: "#444",
    }, formatTick(tv)));
  }
  for (const tv of ticks(1, budget, 8)) {
    parts.push(text("text", {
      x: x(tv), y: height - MARGIN.bottom + 18, "text-anchor": "middle",
      "font-size": 12, fill: "#444",
    }, formatTick(tv)));
  }

  curves.forEach((c, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const evalsOf = (arr: number[]) =>
      arr.map((v, k) => [x(k + 1), y(v)] as const);
    const band = [...evalsOf(c.hi), ...evalsOf(c.lo).reverse()];
    parts.push(el("polygon", {
      points: polylinePoints(band), fill: color, "fill-opacity": 0.15, stroke: "none",
      class: "ci-band",
    }));
    parts.push(el("polyline", {
      points: polylinePoints(evalsOf(c.mean)), fill: "none",
      stroke: color, "stroke-width": 1.8, class: "mean-line",
    }));
    parts.push(text("text", {
      x: width - MARGIN.right - 8, y: MARGIN.top + 16 * (i + 1),
      "text-anchor": "end", "font-size": 12, fill: color,
    }, c.label));
  });

  if (opts.greedyF !== undefined) {
    parts.push(el("line", {
      x1: MARGIN.left, x2: width - MARGIN.right,
      y1: y(opts.greedyF), y2: y(opts.greedyF),
      stroke: "#333", "stroke-width": 1.2, "stroke-dasharray": "6 3",
      class: "greedy-line",
    }));
    parts.push(text("text", {
      x: MARGIN.left + 6, y: y(opts.greedyF) - 5, "font-size": 12, fill: "#333",
    }, "greedy"));
  }

  parts.push(text("text", {
    x: width / 2, y: height - 10, "text-anchor": "middle", "font-size": 13, fill: "#222",
  }, "evaluations"));
  parts.push(text("text", {
    x: 16, y: height / 2, "font-size": 13, fill: "#222",
    transform: `rotate(-90 16 ${height / 2})`, "text-anchor": "middle",
  }, "best objective"));
  if (opts.title) {
    parts.push(text("text", {
      x: width / 2, y: 22, "text-anchor": "middle", "font-size": 15, fill: "#111",
    }, opts.title));
  }

  return el("svg", {
    xmlns: "http://www.w3.org/2000/svg", width, height,
    viewBox: `0 0 ${width} ${height}`,
  }, ...parts);
}

function formatTick(v: number): string {
  return Math.abs(v) >= 1000 ? v.toFixed(0) : String(Math.round(v * 100) / 100);
}
