/** Readers for the benchmark harness's result layout:
 *
 *   <dir>/<instance>/<algo>-<repr>[-greedy]/run<r>.csv   per-evaluation history
 *   <dir>/<instance>/<algo>-<repr>[-greedy]/summary.csv  one row per run
 *
 * Histories carry `eval,perm,f,dv,T,wall_ms`; summaries carry
 * `instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s`.
 * Everything here is read-only over those files.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import Papa from "papaparse";

export interface HistoryRow {
  evalIndex: number;
  perm: number[];
  f: number;
  dv: number;
  T: number;
  wallMs: number;
}

export interface Run {
  runIndex: number;
  rows: HistoryRow[];
}

export interface Group {
  instance: string;
  algo: string;
  repr: string;
  greedySeed: boolean;
  /** Directory basename, e.g. "cego-order-greedy". */
  label: string;
  runs: Run[];
  budget: number;
}

export interface SummaryRow {
  instance: string;
  algo: string;
  repr: string;
  greedySeed: boolean;
  run: number;
  seed: number;
  bestF: number;
  bestDv: number;
  bestT: number;
  wallS: number;
}

const HISTORY_HEADER = ["eval", "perm", "f", "dv", "T", "wall_ms"];
const SUMMARY_HEADER = [
  "instance", "algo", "repr", "greedy_seed", "run", "seed",
  "best_f", "best_dv", "best_T", "wall_s",
];

function parseCsv(file: string, expectedHeader: string[]): string[][] {
  const text = fs.readFileSync(file, "utf8");
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new Error(`${file}: ${parsed.errors[0]!.message}`);
  }
  const rows = parsed.data;
  const header = rows[0];
  if (!header || expectedHeader.some((h, i) => header[i] !== h)) {
    throw new Error(`${file}: expected header ${expectedHeader.join(",")}`);
  }
  return rows.slice(1);
}

export function readHistory(file: string): HistoryRow[] {
  return parseCsv(file, HISTORY_HEADER).map((r) => ({
    evalIndex: Number(r[0]),
    perm: r[1]!.split("-").map(Number),
    f: Number(r[2]),
    dv: Number(r[3]),
    T: Number(r[4]),
    wallMs: Number(r[5]),
  }));
}

export function readSummary(file: string): SummaryRow[] {
  return parseCsv(file, SUMMARY_HEADER).map((r) => ({
    instance: r[0]!,
    algo: r[1]!,
    repr: r[2]!,
    greedySeed: r[3] === "true",
    run: Number(r[4]),
    seed: Number(r[5]),
    bestF: Number(r[6]),
    bestDv: Number(r[7]),
    bestT: Number(r[8]),
    wallS: Number(r[9]),
  }));
}

function parseGroupLabel(label: string): { algo: string; repr: string; greedySeed: boolean } {
  const parts = label.split("-");
  if (parts.length < 2 || parts.length > 3 || (parts.length === 3 && parts[2] !== "greedy")) {
    throw new Error(`not a result group directory name: ${label}`);
  }
  return { algo: parts[0]!, repr: parts[1]!, greedySeed: parts.length === 3 };
}

const RUN_FILE = /^run(\d+)\.csv$/;

/** Load every result group under a harness output directory. */
export function loadRunSet(dir: string): Group[] {
  const groups: Group[] = [];
  for (const instance of fs.readdirSync(dir).sort()) {
    const instDir = path.join(dir, instance);
    if (!fs.statSync(instDir).isDirectory()) continue;
    for (const label of fs.readdirSync(instDir).sort()) {
      const groupDir = path.join(instDir, label);
      if (!fs.statSync(groupDir).isDirectory()) continue;
      const { algo, repr, greedySeed } = parseGroupLabel(label);
      const runs: Run[] = [];
      for (const f of fs.readdirSync(groupDir).sort()) {
        const m = RUN_FILE.exec(f);
        if (!m) continue;
        runs.push({ runIndex: Number(m[1]), rows: readHistory(path.join(groupDir, f)) });
      }
      if (runs.length === 0) continue;
      const budget = runs[0]!.rows.length;
      for (const run of runs) {
        if (run.rows.length !== budget) {
          throw new Error(
            `${groupDir}: run${run.runIndex} has ${run.rows.length} rows, expected ${budget}`,
          );
        }
      }
      groups.push({ instance, algo, repr, greedySeed, label, runs, budget });
    }
  }
  return groups;
}

/** Load every summary.csv under a harness output directory. */
export function loadSummaries(dir: string): SummaryRow[] {
  const out: SummaryRow[] = [];
  for (const instance of fs.readdirSync(dir).sort()) {
    const instDir = path.join(dir, instance);
    if (!fs.statSync(instDir).isDirectory()) continue;
    for (const label of fs.readdirSync(instDir).sort()) {
      const file = path.join(instDir, label, "summary.csv");
      if (fs.existsSync(file)) out.push(...readSummary(file));
    }
  }
  return out;
}
