import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { afterEach, describe, expect, test } from "vitest";

import { loadRunSet, loadSummaries, readHistory, readSummary } from "../src/runset.js";

const tmpDirs: string[] = [];

function freshDir(): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "runset-"));
  tmpDirs.push(dir);
  return dir;
}

afterEach(() => {
  while (tmpDirs.length > 0) {
    fs.rmSync(tmpDirs.pop()!, { recursive: true, force: true });
  }
});

function historyCsv(rows: [number, string, number][]): string {
  const lines = ["eval,perm,f,dv,T,wall_ms"];
  for (const [i, perm, f] of rows) {
    lines.push(`${i},${perm},${f},${f - 1},${15.0},0.5`);
  }
  return lines.join("\n") + "\n";
}

function writeGroup(root: string, instance: string, label: string, runs: string[]): string {
  const dir = path.join(root, instance, label);
  fs.mkdirSync(dir, { recursive: true });
  runs.forEach((csv, r) => fs.writeFileSync(path.join(dir, `run${r}.csv`), csv));
  return dir;
}

describe("readHistory", () => {
  test("parses rows and dash-separated permutations", () => {
    const dir = freshDir();
    const file = path.join(dir, "run0.csv");
    fs.writeFileSync(file, historyCsv([[1, "2-0-1", 10.5], [2, "0-1-2", 9.25]]));
    const rows = readHistory(file);
    expect(rows).toHaveLength(2);
    expect(rows[0]!.evalIndex).toBe(1);
    expect(rows[0]!.perm).toEqual([2, 0, 1]);
    expect(rows[0]!.f).toBe(10.5);
    expect(rows[1]!.T).toBe(15);
  });

  test("rejects a wrong header", () => {
    const dir = freshDir();
    const file = path.join(dir, "bad.csv");
    fs.writeFileSync(file, "eval,f,dv\n1,2,3\n");
    expect(() => readHistory(file)).toThrow(/expected header/);
  });
});

describe("readSummary", () => {
  test("parses greedy_seed as a boolean", () => {
    const dir = freshDir();
    const file = path.join(dir, "summary.csv");
    fs.writeFileSync(
      file,
      "instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s\n" +
        "10_42,umm,rank,false,0,0,289.5,250.1,591.0,5.612\n" +
        "10_42,umm,rank,true,1,1,280.25,240.0,603.7,5.588\n",
    );
    const rows = readSummary(file);
    expect(rows[0]!.greedySeed).toBe(false);
    expect(rows[1]!.greedySeed).toBe(true);
    expect(rows[1]!.bestF).toBe(280.25);
    expect(rows[0]!.wallS).toBe(5.612);
  });
});

describe("loadRunSet", () => {
  test("groups runs by instance and directory label", () => {
    const root = freshDir();
    const h = historyCsv([[1, "0-1-2", 5], [2, "1-0-2", 4]]);
    writeGroup(root, "10_42", "rs-order", [h, h]);
    writeGroup(root, "10_42", "umm-rank-greedy", [h]);
    writeGroup(root, "15_73", "cego-order", [h]);
    const groups = loadRunSet(root);
    expect(groups.map((g) => `${g.instance}/${g.label}`)).toEqual([
      "10_42/rs-order",
      "10_42/umm-rank-greedy",
      "15_73/cego-order",
    ]);
    const umm = groups[1]!;
    expect(umm.algo).toBe("umm");
    expect(umm.repr).toBe("rank");
    expect(umm.greedySeed).toBe(true);
    expect(umm.budget).toBe(2);
    expect(groups[0]!.greedySeed).toBe(false);
    expect(groups[0]!.runs).toHaveLength(2);
  });

  test("throws when runs in a group disagree on budget", () => {
    const root = freshDir();
    writeGroup(root, "10_42", "rs-order", [
      historyCsv([[1, "0-1", 5], [2, "1-0", 4]]),
      historyCsv([[1, "0-1", 5]]),
    ]);
    expect(() => loadRunSet(root)).toThrow(/expected 2/);
  });

  test("skips groups with no run files", () => {
    const root = freshDir();
    fs.mkdirSync(path.join(root, "10_42", "rs-order"), { recursive: true });
    expect(loadRunSet(root)).toEqual([]);
  });

  test("rejects directory names that are not group labels", () => {
    const root = freshDir();
    writeGroup(root, "10_42", "notagroup", [historyCsv([[1, "0-1", 5]])]);
    expect(() => loadRunSet(root)).toThrow(/not a result group/);
  });
});

describe("loadSummaries", () => {
  test("collects rows across groups and instances", () => {
    const root = freshDir();
    const gdir = writeGroup(root, "10_42", "rs-order", [historyCsv([[1, "0-1", 5]])]);
    fs.writeFileSync(
      path.join(gdir, "summary.csv"),
      "instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s\n" +
        "10_42,rs,order,false,0,0,300.0,260.0,600.0,5.0\n",
    );
    const gdir2 = writeGroup(root, "15_73", "umm-rank", [historyCsv([[1, "0-1", 5]])]);
    fs.writeFileSync(
      path.join(gdir2, "summary.csv"),
      "instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s\n" +
        "15_73,umm,rank,false,0,0,470.0,430.0,600.0,6.0\n" +
        "15_73,umm,rank,false,1,1,472.5,433.0,592.5,6.1\n",
    );
    const rows = loadSummaries(root);
    expect(rows).toHaveLength(3);
    expect(rows[0]!.instance).toBe("10_42");
    expect(rows[2]!.bestF).toBe(472.5);
  });
});
