import { describe, expect, test } from "vitest";

import {
  bestSoFar,
  logGamma,
  mean,
  meanCI95,
  normalCdf,
  regularizedIncompleteBeta,
  sampleSd,
  studentTCdf,
  studentTQuantile,
} from "../src/stats.js";

describe("basic moments", () => {
  test("mean and sample sd", () => {
    expect(mean([1, 2, 3, 4, 5])).toBe(3);
    expect(Math.abs(sampleSd([1, 2, 3, 4, 5]) - Math.sqrt(2.5))).toBeLessThan(1e-14);
  });

  test("bestSoFar is the running minimum", () => {
    expect(bestSoFar([3, 5, 2, 4, 1])).toEqual([3, 3, 2, 2, 1]);
    expect(bestSoFar([7])).toEqual([7]);
  });
});

describe("special functions", () => {
  test("logGamma at known points", () => {
    expect(Math.abs(logGamma(0.5) - Math.log(Math.sqrt(Math.PI)))).toBeLessThan(1e-12);
    expect(Math.abs(logGamma(5) - Math.log(24))).toBeLessThan(1e-12);
    expect(Math.abs(logGamma(1))).toBeLessThan(1e-12);
  });

  test("regularized incomplete beta closed forms", () => {
    // I_x(1,1) = x; I_x(2,2) = 3x^2 - 2x^3
    for (const x of [0.1, 0.3, 0.5, 0.9]) {
      expect(Math.abs(regularizedIncompleteBeta(1, 1, x) - x)).toBeLessThan(1e-12);
      const cubic = 3 * x * x - 2 * x * x * x;
      expect(Math.abs(regularizedIncompleteBeta(2, 2, x) - cubic)).toBeLessThan(1e-12);
    }
  });

  test("normal cdf at tabled points", () => {
    expect(normalCdf(0)).toBe(0.5);
    expect(Math.abs(normalCdf(1.959963985) - 0.975)).toBeLessThan(1e-9);
    expect(Math.abs(normalCdf(-1.959963985) - 0.025)).toBeLessThan(1e-9);
    // symmetry and a far-tail value (z=7: upper tail 1.279813e-12)
    expect(normalCdf(3) + normalCdf(-3)).toBeCloseTo(1, 12);
    expect(Math.abs(1 - normalCdf(7) - 1.279813e-12)).toBeLessThan(1e-16);
  });
});

describe("Student t", () => {
  test("cdf symmetry and center", () => {
    expect(Math.abs(studentTCdf(0, 7) - 0.5)).toBeLessThan(1e-12);
    expect(Math.abs(studentTCdf(2, 7) + studentTCdf(-2, 7) - 1)).toBeLessThan(1e-12);
  });

  test("quantiles match published table values", () => {
    expect(Math.abs(studentTQuantile(0.975, 29) - 2.04523)).toBeLessThan(1e-4);
    expect(Math.abs(studentTQuantile(0.975, 1) - 12.7062)).toBeLessThan(1e-3);
    expect(Math.abs(studentTQuantile(0.975, 4) - 2.776445)).toBeLessThan(1e-5);
    // large nu approaches the normal quantile
    expect(Math.abs(studentTQuantile(0.975, 1e6) - 1.95996)).toBeLessThan(1e-3);
  });

  test("quantile inverts the cdf", () => {
    for (const [p, nu] of [[0.9, 5], [0.6, 12], [0.99, 30]] as const) {
      expect(Math.abs(studentTCdf(studentTQuantile(p, nu), nu) - p)).toBeLessThan(1e-9);
    }
  });
});

describe("meanCI95", () => {
  test("matches a hand computation", () => {
    const ci = meanCI95([1, 2, 3, 4, 5]);
    const half = 2.776445105 * Math.sqrt(2.5) / Math.sqrt(5);
    expect(ci.mean).toBe(3);
    expect(Math.abs(ci.lo - (3 - half))).toBeLessThan(1e-6);
    expect(Math.abs(ci.hi - (3 + half))).toBeLessThan(1e-6);
  });

  test("degenerates for a single observation", () => {
    const ci = meanCI95([4.2]);
    expect(ci.mean).toBe(4.2);
    expect(ci.lo).toBe(4.2);
    expect(ci.hi).toBe(4.2);
  });

  test("zero-variance sample gives a zero-width band", () => {
    const ci = meanCI95([2, 2, 2, 2]);
    expect(ci.lo).toBe(2);
    expect(ci.hi).toBe(2);
  });
});
