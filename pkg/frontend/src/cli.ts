#!/usr/bin/env node
/** arp-plot: figures and tables from benchmark harness outputs. */

import * as fs from "node:fs";
import * as path from "node:path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { convergencePlot } from "./convergence.js";
import { Group, loadRunSet, loadSummaries, SummaryRow } from "./runset.js";
import { groupStats, objectiveTableCsv, runtimeTableCsv } from "./tables.js";
import { parseTrajectory, trajectoryPlot } from "./trajectory.js";
import { rankSumTest } from "./wilcoxon.js";

interface IoArgs {
  in: string;
  out: string;
}

function ensureOutDir(dir: string): void {
  fs.mkdirSync(dir, { recursive: true });
}

function writeOut(outDir: string, name: string, content: string): void {
  const file = path.join(outDir, name);
  fs.writeFileSync(file, content);
  console.log(`wrote ${file}`);
}

function cmdConvergence(argv: IoArgs & { greedyF?: number }): void {
  const groups = loadRunSet(argv.in);
  if (groups.length === 0) throw new Error(`no result groups under ${argv.in}`);
  ensureOutDir(argv.out);
  const byInstance = new Map<string, Group[]>();
  for (const g of groups) {
    const bucket = byInstance.get(g.instance);
    if (bucket) bucket.push(g);
    else byInstance.set(g.instance, [g]);
  }
  for (const [instance, instGroups] of byInstance) {
    const svg = convergencePlot(instGroups, {
      greedyF: argv.greedyF,
      title: instance,
    });
    writeOut(argv.out, `convergence-${instance}.svg`, svg);
  }
}

function cmdTrajectory(argv: IoArgs): void {
  const stat = fs.statSync(argv.in);
  const files = stat.isDirectory()
    ? fs.readdirSync(argv.in).sort()
        .filter((f) => f.endsWith(".json"))
        .map((f) => path.join(argv.in, f))
    : [argv.in];
  ensureOutDir(argv.out);
  let rendered = 0;
  for (const file of files) {
    let traj;
    try {
      traj = parseTrajectory(fs.readFileSync(file, "utf8"));
    } catch (e) {
      if (stat.isDirectory()) {
        console.warn(`skipping ${file}: ${(e as Error).message}`);
        continue;
      }
      throw e;
    }
    const name = path.basename(file, ".json");
    writeOut(argv.out, `${name}.svg`, trajectoryPlot(traj));
    rendered += 1;
  }
  if (rendered === 0) throw new Error(`no trajectory exports under ${argv.in}`);
}

function cmdTables(argv: IoArgs): void {
  const rows = loadSummaries(argv.in);
  if (rows.length === 0) throw new Error(`no summary rows under ${argv.in}`);
  ensureOutDir(argv.out);
  const stats = groupStats(rows);
  writeOut(argv.out, "objective.csv", objectiveTableCsv(stats));
  writeOut(argv.out, "runtime.csv", runtimeTableCsv(stats));
}

function cmdWilcoxon(argv: IoArgs): void {
  const rows = loadSummaries(argv.in);
  if (rows.length === 0) throw new Error(`no summary rows under ${argv.in}`);
  ensureOutDir(argv.out);
  const byInstance = new Map<string, Map<string, SummaryRow[]>>();
  for (const r of rows) {
    const label = r.greedySeed ? `${r.algo}-${r.repr}-greedy` : `${r.algo}-${r.repr}`;
    let inst = byInstance.get(r.instance);
    if (!inst) {
      inst = new Map();
      byInstance.set(r.instance, inst);
    }
    const bucket = inst.get(label);
    if (bucket) bucket.push(r);
    else inst.set(label, [r]);
  }
  const lines = ["instance,group_a,group_b,n_a,n_b,w,p_value,significant,method"];
  for (const [instance, labels] of [...byInstance.entries()].sort()) {
    const names = [...labels.keys()].sort();
    for (let i = 0; i < names.length; i += 1) {
      for (let j = i + 1; j < names.length; j += 1) {
        const a = labels.get(names[i]!)!.map((r) => r.bestF);
        const b = labels.get(names[j]!)!.map((r) => r.bestF);
        const res = rankSumTest(a, b);
        lines.push([
          instance, names[i], names[j], a.length, b.length,
          res.w, res.pValue, res.significant, res.method,
        ].join(","));
      }
    }
  }
  writeOut(argv.out, "wilcoxon.csv", lines.join("\n") + "\n");
}

const ioOptions = {
  in: {
    type: "string" as const,
    demandOption: true,
    describe: "harness output directory (or trajectory JSON for `trajectory`)",
  },
  out: {
    type: "string" as const,
    demandOption: true,
    describe: "directory to write figures/tables into",
  },
};

export function main(args: string[]): void {
  void yargs(args)
    .scriptName("arp-plot")
    .command(
      "convergence",
      "mean best-so-far per group with 95% CI bands, one SVG per instance",
      { ...ioOptions, "greedy-f": { type: "number" as const, describe: "horizontal reference line" } },
      (argv) => cmdConvergence(argv as unknown as IoArgs & { greedyF?: number }),
    )
    .command(
      "trajectory",
      "ecliptic-plane figure for each trajectory export",
      ioOptions,
      (argv) => cmdTrajectory(argv as unknown as IoArgs),
    )
    .command(
      "tables",
      "objective and runtime summary tables as CSV",
      ioOptions,
      (argv) => cmdTables(argv as unknown as IoArgs),
    )
    .command(
      "wilcoxon",
      "pairwise two-sided rank-sum tests on final best objective values",
      ioOptions,
      (argv) => cmdWilcoxon(argv as unknown as IoArgs),
    )
    .demandCommand(1)
    .strict()
    .help()
    .parseSync();
}

const entry = process.argv[1];
if (entry && (entry.endsWith("cli.js") || entry.endsWith("arp-plot"))) {
  main(hideBin(process.argv));
}
