import { describe, expect, test } from "vitest";

import {
  exactTwoSidedP,
  midranks,
  normalApproxP,
  rankSumCounts,
  rankSumTest,
  SIGNIFICANCE_LEVEL,
} from "../src/wilcoxon.js";

/** Independent oracle: enumerate every size-k subset of ranks {1..n}. */
function* combinations(n: number, k: number, start = 1): Generator<number[]> {
  if (k === 0) {
    yield [];
    return;
  }
  for (let v = start; v <= n - k + 1; v++) {
    for (const rest of combinations(n, k - 1, v + 1)) {
      yield [v, ...rest];
    }
  }
}

function oracleTwoSidedP(a: readonly number[], b: readonly number[]): number {
  const pooled = [...a, ...b].sort((x, y) => x - y);
  if (new Set(pooled).size !== pooled.length) throw new Error("oracle needs tie-free data");
  const rankOf = new Map(pooled.map((v, i) => [v, i + 1]));
  let w = 0;
  for (const v of a) w += rankOf.get(v)!;
  const n = pooled.length;
  const mu = (a.length * (n + 1)) / 2;
  const dev = Math.abs(w - mu);
  let hits = 0;
  let total = 0;
  for (const subset of combinations(n, a.length)) {
    const s = subset.reduce((acc, r) => acc + r, 0);
    total += 1;
    if (Math.abs(s - mu) >= dev - 1e-9) hits += 1;
  }
  return Math.min(1, hits / total);
}

describe("rankSumTest", () => {
  test("matches the exact-enumeration oracle to 1e-10 on fixed samples", () => {
    const cases: [number[], number[]][] = [
      [[12.1, 14.3, 9.8, 11.0], [13.5, 15.2, 16.9, 10.4, 18.7]],
      [[1.5, 2.5, 3.5], [4.5, 5.5, 6.5, 7.5]],
      [[300.2, 289.4, 310.7, 295.1, 301.9], [300.1, 288.0, 309.5, 296.6, 302.3]],
      [[5, 9, 17, 21, 33, 41], [6, 10, 18, 22, 34]],
    ];
    for (const [a, b] of cases) {
      const res = rankSumTest(a, b);
      expect(res.method).toBe("exact");
      expect(Math.abs(res.pValue - oracleTwoSidedP(a, b))).toBeLessThan(1e-10);
    }
  });

  test("identical samples give p = 1", () => {
    const res = rankSumTest([4, 4, 4, 4], [4, 4, 4, 4]);
    expect(res.pValue).toBe(1);
    expect(res.significant).toBe(false);
  });

  test("disjoint-support samples are significant at 0.01", () => {
    const a = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
    const b = [100, 101, 102, 103, 104, 105, 106, 107, 108, 109, 110];
    const res = rankSumTest(a, b);
    expect(res.pValue).toBeLessThan(0.001);
    expect(res.significant).toBe(true);
    expect(SIGNIFICANCE_LEVEL).toBe(0.01);
  });

  test("most extreme 2x5 split has two-sided p = 2/21", () => {
    // classic table value: ranks {1,2} against {3..7}
    expect(Math.abs(exactTwoSidedP(3, 2, 5) - 2 / 21)).toBeLessThan(1e-12);
  });

  test("refuses groups smaller than 3", () => {
    expect(() => rankSumTest([1, 2], [3, 4, 5, 6, 7])).toThrow(/at least 3/);
  });

  test("falls back to the normal approximation on ties and large samples", () => {
    const tied = rankSumTest([1, 2, 2, 3], [2, 4, 5, 6]);
    expect(tied.method).toBe("normal-approximation");
    const big = rankSumTest(
      Array.from({ length: 16 }, (_, i) => i * 1.1),
      Array.from({ length: 16 }, (_, i) => i * 1.1 + 0.05),
    );
    expect(big.method).toBe("normal-approximation");
    expect(big.pValue).toBeGreaterThan(0);
    expect(big.pValue).toBeLessThanOrEqual(1);
  });

  test("normal approximation tracks the exact p on tie-free data", () => {
    const a = [3.1, 7.4, 9.9, 12.2, 15.8, 20.1, 24.4];
    const b = [5.2, 8.3, 11.1, 13.6, 17.9, 22.5, 26.8];
    const exact = rankSumTest(a, b);
    expect(exact.method).toBe("exact");
    const pooled = [...a, ...b].sort((x, y) => x - y);
    const approx = normalApproxP(exact.w, a.length, b.length, pooled);
    expect(Math.abs(approx - exact.pValue)).toBeLessThan(0.05);
  });

  test("rank-sum null distribution row sums to C(n, k)", () => {
    const counts = rankSumCounts(9, 4);
    const total = counts.reduce((acc, c) => acc + c, 0);
    expect(total).toBe(126);
    // min sum 1+2+3+4=10, max 6+7+8+9=30
    expect(counts[10]).toBe(1);
    expect(counts[30]).toBe(1);
    expect(counts[9]).toBe(0);
  });

  test("midranks average tied positions", () => {
    expect(midranks([1, 2, 2, 5])).toEqual([1, 2.5, 2.5, 4]);
    expect(midranks([3, 3, 3])).toEqual([2, 2, 2]);
  });
});
