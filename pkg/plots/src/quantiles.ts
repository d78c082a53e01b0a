// Quantile and boxplot statistics. The quantile convention is linear
// interpolation between order statistics (inclusive endpoints), matching
// the aggregation used by the simulator that produced the CSVs.

export function quantile(values: readonly number[], q: number): number {
  if (values.length === 0) return NaN;
  if (q < 0 || q > 1) throw new Error(`quantile level ${q} outside [0, 1]`);
  const sorted = [...values].sort((a, b) => a - b);
  const pos = (sorted.length - 1) * q;
  const base = Math.floor(pos);
  const rest = pos - base;
  if (base + 1 >= sorted.length) return sorted[base];
  return sorted[base] + rest * (sorted[base + 1] - sorted[base]);
}

export interface BoxStats {
  q1: number;
  median: number;
  q3: number;
  loWhisker: number;
  hiWhisker: number;
  outliers: number[];
}

// Whiskers reach the most extreme data points within 1.5 IQR of the box.
export function boxStats(values: readonly number[]): BoxStats {
  if (values.length === 0) throw new Error("boxStats needs at least one value");
  const q1 = quantile(values, 0.25);
  const median = quantile(values, 0.5);
  const q3 = quantile(values, 0.75);
  const iqr = q3 - q1;
  const loFence = q1 - 1.5 * iqr;
  const hiFence = q3 + 1.5 * iqr;
  const inside = values.filter(v => v >= loFence && v <= hiFence);
  const loWhisker = inside.length ? Math.min(...inside) : q1;
  const hiWhisker = inside.length ? Math.max(...inside) : q3;
  const outliers = values.filter(v => v < loFence || v > hiFence);
  return { q1, median, q3, loWhisker, hiWhisker, outliers };
}
