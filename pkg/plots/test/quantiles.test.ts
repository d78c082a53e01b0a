import { describe, expect, it } from "vitest";

import { boxStats, quantile } from "../src/quantiles.js";

// Independent recomputation: same convention, written from the index
// arithmetic rather than interpolation weights.
function referenceQuantile(values: readonly number[], q: number): number {
  const sorted = [...values].sort((a, b) => a - b);
  const n = sorted.length;
  const h = (n - 1) * q;
  const lo = Math.min(Math.floor(h), n - 1);
  const hi = Math.min(lo + 1, n - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("quantile", () => {
  it("matches the independent recomputation to 1e-12", () => {
    const rand = mulberry32(42);
    for (let trial = 0; trial < 200; trial++) {
      const n = 1 + Math.floor(rand() * 40);
      const values = Array.from({ length: n }, () => rand() * 100);
      for (const q of [0, 0.1, 0.25, 0.5, 0.75, 0.9, 1]) {
        expect(Math.abs(quantile(values, q) - referenceQuantile(values, q))).toBeLessThanOrEqual(1e-12);
      }
    }
  });

  it("interpolates linearly between order statistics", () => {
    expect(quantile([0, 10], 0.25)).toBeCloseTo(2.5, 12);
    expect(quantile([1, 2, 3, 4], 0.5)).toBeCloseTo(2.5, 12);
    expect(quantile([7], 0.5)).toBe(7);
  });

  it("rejects levels outside [0, 1]", () => {
    expect(() => quantile([1, 2], 1.5)).toThrow();
  });
});

describe("boxStats", () => {
  it("puts whiskers at the most extreme points within 1.5 IQR", () => {
    const values = [1, 2, 3, 4, 5, 6, 7, 8, 100];
    const stats = boxStats(values);
    const iqr = stats.q3 - stats.q1;
    expect(stats.loWhisker).toBeGreaterThanOrEqual(stats.q1 - 1.5 * iqr);
    expect(stats.hiWhisker).toBeLessThanOrEqual(stats.q3 + 1.5 * iqr);
    expect(stats.outliers).toEqual([100]);
    expect(stats.loWhisker).toBe(1);
    expect(stats.hiWhisker).toBe(8);
  });

  it("quartiles agree with the reference to 1e-12", () => {
    const rand = mulberry32(7);
    const values = Array.from({ length: 200 }, () => rand() * 50);
    const stats = boxStats(values);
    expect(Math.abs(stats.q1 - referenceQuantile(values, 0.25))).toBeLessThanOrEqual(1e-12);
    expect(Math.abs(stats.median - referenceQuantile(values, 0.5))).toBeLessThanOrEqual(1e-12);
    expect(Math.abs(stats.q3 - referenceQuantile(values, 0.75))).toBeLessThanOrEqual(1e-12);
  });

  it("handles constant samples", () => {
    const stats = boxStats([3, 3, 3]);
    expect(stats.q1).toBe(3);
    expect(stats.q3).toBe(3);
    expect(stats.loWhisker).toBe(3);
    expect(stats.hiWhisker).toBe(3);
    expect(stats.outliers).toEqual([]);
  });
});
