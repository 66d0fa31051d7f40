/** Trajectory figures: ecliptic-plane projection of a scored tour. */

import { el, PALETTE, polylinePoints, text } from "./svg.js";

export interface TrajectoryLeg {
  kind: "park" | "transfer";
  body: string;
  t_start_mjd: number;
  t_end_mjd: number;
  samples: [number, number, number][];
}

export interface TrajectoryExport {
  name: string;
  tau0: number;
  dv: number;
  T: number;
  f: number;
  legs: TrajectoryLeg[];
  impulses: { epoch_mjd: number; dv_kms: number }[];
  earth_orbit: [number, number, number][];
}

export function parseTrajectory(jsonText: string): TrajectoryExport {
  let doc: unknown;
  try {
    doc = JSON.parse(jsonText);
  } catch (e) {
    throw new Error(`trajectory parse error: ${(e as Error).message}`);
  }
  const t = doc as TrajectoryExport;
  if (!Array.isArray(t.legs) || !Array.isArray(t.impulses) || !Array.isArray(t.earth_orbit)) {
    throw new Error("trajectory parse error: missing legs/impulses/earth_orbit");
  }
  return t;
}

export interface TrajectoryOptions {
  width?: number;
}

/** Bodies in visit order: first appearance along the legs, Earth first. */
export function visitOrder(traj: TrajectoryExport): string[] {
  const seen: string[] = [];
  for (const leg of traj.legs) {
    if (!seen.includes(leg.body)) seen.push(leg.body);
  }
  return seen;
}

export function trajectoryPlot(traj: TrajectoryExport, opts: TrajectoryOptions = {}): string {
  const width = opts.width ?? 640;
  const legendWidth = 190;

  // square plotting area over symmetric, shared x/y extents: at-scale axes
  let extent = 0;
  const consider = (pts: [number, number, number][]) => {
    for (const [x, y] of pts) {
      extent = Math.max(extent, Math.abs(x), Math.abs(y));
    }
  };
  consider(traj.earth_orbit);
  for (const leg of traj.legs) consider(leg.samples);
  if (extent === 0) throw new Error("trajectory has no samples");
  extent *= 1.06;

  const plotSize = width - legendWidth;
  const height = plotSize;
  const sx = (x: number) => ((x + extent) / (2 * extent)) * plotSize;
  const sy = (y: number) => plotSize - ((y + extent) / (2 * extent)) * plotSize;
  const project = (pts: [number, number, number][]) =>
    pts.map(([x, y]) => [sx(x), sy(y)] as const);

  const order = visitOrder(traj);
  const colorOf = new Map<string, string>();
  order.forEach((body, i) => colorOf.set(body, PALETTE[i % PALETTE.length]!));

  const parts: string[] = [];
  parts.push(el("rect", { x: 0, y: 0, width, height, fill: "white" }));

  parts.push(el("polyline", {
    points: polylinePoints(project(traj.earth_orbit)),
    fill: "none", stroke: "#1f77b4", "stroke-width": 1.2,
    "stroke-dasharray": "5 4", class: "earth-orbit",
  }));

  for (const leg of traj.legs) {
    parts.push(el("polyline", {
      points: polylinePoints(project(leg.samples)),
      fill: "none", stroke: colorOf.get(leg.body)!,
      "stroke-width": leg.kind === "transfer" ? 1.6 : 2.4,
      class: `leg-${leg.kind}`,
    }));
  }

  // the Sun sits at the heliocentric origin
  parts.push(el("circle", {
    cx: sx(0), cy: sy(0), r: 6, fill: "#f2c200", stroke: "#b08900",
    class: "sun",
  }));

  const legendX = plotSize + 14;
  let legendY = 26;
  parts.push(text("text", {
    x: legendX, y: legendY, "font-size": 13, fill: "#111",
  }, traj.name));
  legendY += 10;
  // the impulsive burns bracket each transfer: departure at its start,
  // rendezvous at its end
  const transferTo = new Map<string, TrajectoryLeg>();
  for (const leg of traj.legs) {
    if (leg.kind === "transfer" && !transferTo.has(leg.body)) {
      transferTo.set(leg.body, leg);
    }
  }
  for (const body of order) {
    legendY += 18;
    parts.push(el("line", {
      x1: legendX, x2: legendX + 16, y1: legendY - 4, y2: legendY - 4,
      stroke: colorOf.get(body)!, "stroke-width": 2.4,
    }));
    const leg = transferTo.get(body);
    const label = leg === undefined
      ? body
      : `${body}  dep ${fmtMjd(leg.t_start_mjd)}  arr ${fmtMjd(leg.t_end_mjd)}`;
    parts.push(text("text", {
      x: legendX + 22, y: legendY, "font-size": 11, fill: "#333",
      class: "legend-entry",
    }, label));
  }
  legendY += 24;
  for (const line of [
    `dv ${traj.dv.toFixed(3)} km/s`,
    `T ${traj.T.toFixed(1)} d`,
    `f ${traj.f.toFixed(3)}`,
  ]) {
    parts.push(text("text", {
      x: legendX, y: legendY, "font-size": 11, fill: "#333",
    }, line));
    legendY += 15;
  }

  return el("svg", {
    xmlns: "http://www.w3.org/2000/svg", width, height,
    viewBox: `0 0 ${width} ${height}`,
  }, ...parts);
}

function fmtMjd(v: number | undefined): string {
  return v === undefined ? "-" : v.toFixed(1);
}
