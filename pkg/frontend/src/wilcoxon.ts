/** Two-sided Wilcoxon rank-sum test.
 *
 * Without ties and for small samples the p-value is exact: the null
 * distribution of the rank sum is built by dynamic programming over which
 * ranks the first sample occupies. With ties (or large samples) it falls
 * back to the normal approximation with midranks, tie-corrected variance,
 * and a continuity correction.
 */

import { normalCdf } from "./stats.js";

export const SIGNIFICANCE_LEVEL = 0.01;

export interface RankSumResult {
  /** Rank sum of the first sample (midranks under ties). */
  w: number;
  pValue: number;
  significant: boolean;
  method: "exact" | "normal-approximation";
}

/** Midranks of the pooled sample, in pooled sort order. */
export function midranks(sorted: readonly number[]): number[] {
  const n = sorted.length;
  const ranks = new Array<number>(n);
  let i = 0;
  while (i < n) {
    let j = i;
    while (j + 1 < n && sorted[j + 1] === sorted[i]) j++;
    const r = (i + j) / 2 + 1;
    for (let k = i; k <= j; k++) ranks[k] = r;
    i = j + 1;
  }
  return ranks;
}

/** Number of ways to pick `take` ranks from 1..n summing to each value.
 *
 * Returns the table row for `take` picks: counts[s] = #subsets of size
 * `take` of {1..n} with sum s. Plain integer DP; sizes here stay small
 * enough that doubles hold the counts exactly.
 */
export function rankSumCounts(n: number, take: number): number[] {
  const maxSum = ((2 * n - take + 1) * take) / 2;
  let rows: number[][] = [];
  for (let k = 0; k <= take; k++) {
    rows.push(new Array<number>(maxSum + 1).fill(0));
  }
  rows[0]![0] = 1;
  for (let rank = 1; rank <= n; rank++) {
    for (let k = Math.min(take, rank); k >= 1; k--) {
      const dst = rows[k]!;
      const src = rows[k - 1]!;
      for (let s = maxSum; s >= rank; s--) {
        const add = src[s - rank]!;
        if (add !== 0) dst[s] = dst[s]! + add;
      }
    }
  }
  return rows[take]!;
}

function binomial(n: number, k: number): number {
  let acc = 1;
  for (let i = 0; i < k; i++) acc = (acc * (n - i)) / (i + 1);
  return Math.round(acc);
}

export function exactTwoSidedP(w: number, n1: number, n2: number): number {
  const counts = rankSumCounts(n1 + n2, n1);
  const total = binomial(n1 + n2, n1);
  const mu = (n1 * (n1 + n2 + 1)) / 2;
  // two-sided: everything at least as far from the mean as observed
  const dev = Math.abs(w - mu);
  let hits = 0;
  for (let s = 0; s < counts.length; s++) {
    if (Math.abs(s - mu) >= dev - 1e-9) hits += counts[s]!;
  }
  return Math.min(1, hits / total);
}

export function normalApproxP(
  w: number,
  n1: number,
  n2: number,
  pooledSorted: readonly number[],
): number {
  const n = n1 + n2;
  const mu = (n1 * (n + 1)) / 2;
  // tie correction subtracts sum(t^3 - t) over tie groups from the variance
  let tieTerm = 0;
  let i = 0;
  while (i < n) {
    let j = i;
    while (j + 1 < n && pooledSorted[j + 1] === pooledSorted[i]) j++;
    const t = j - i + 1;
    tieTerm += t * t * t - t;
    i = j + 1;
  }
  const sigma2 = ((n1 * n2) / 12) * (n + 1 - tieTerm / (n * (n - 1)));
  if (sigma2 <= 0) return 1; // all observations identical
  const z = Math.max(0, Math.abs(w - mu) - 0.5) / Math.sqrt(sigma2);
  return Math.min(1, 2 * (1 - normalCdf(z)));
}

export const EXACT_LIMIT = 30; // pooled size cap for the exact distribution

export function rankSumTest(a: readonly number[], b: readonly number[]): RankSumResult {
  if (a.length < 3 || b.length < 3) {
    throw new Error("rank-sum test needs at least 3 observations per group");
  }
  const pooled = [...a.map((v) => [v, 0] as const), ...b.map((v) => [v, 1] as const)];
  pooled.sort((x, y) => x[0] - y[0]);
  const values = pooled.map((p) => p[0]);
  const ranks = midranks(values);
  let w = 0;
  for (let i = 0; i < pooled.length; i++) {
    if (pooled[i]![1] === 0) w += ranks[i]!;
  }
  const hasTies = new Set(values).size !== values.length;
  let pValue: number;
  let method: RankSumResult["method"];
  if (!hasTies && a.length + b.length <= EXACT_LIMIT) {
    pValue = exactTwoSidedP(w, a.length, b.length);
    method = "exact";
  } else {
    pValue = normalApproxP(w, a.length, b.length, values);
    method = "normal-approximation";
  }
  return { w, pValue, significant: pValue < SIGNIFICANCE_LEVEL, method };
}
