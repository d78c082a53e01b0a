// Minimal SVG scaffolding: scales, ticks, paths, axes. Output is plain
// markup with no timestamps, so identical inputs give identical bytes.

export interface Scale {
  (value: number): number;
  kind: "linear" | "log";
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.kind = "linear";
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs a positive domain");
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  const scale = ((value: number) =>
    r0 + ((Math.log10(value) - l0) / span) * (r1 - r0)) as Scale;
  scale.kind = "log";
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function linearTicks(domain: [number, number], count = 6): number[] {
  const [d0, d1] = domain;
  const span = d1 - d0;
  if (span <= 0) return [d0];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find(s => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  let tick = Math.ceil(d0 / chosen) * chosen;
  for (; tick <= d1 + 1e-9 * span; tick += chosen) ticks.push(tick);
  return ticks;
}

export function logTicks(domain: [number, number]): number[] {
  const ticks: number[] = [];
  const lo = Math.ceil(Math.log10(domain[0]) - 1e-12);
  const hi = Math.floor(Math.log10(domain[1]) + 1e-12);
  for (let e = lo; e <= hi; e++) ticks.push(Math.pow(10, e));
  return ticks.length ? ticks : [domain[0]];
}

const px = (value: number) => (Math.round(value * 100) / 100).toString();

export function formatTick(value: number): string {
  if (value !== 0 && (Math.abs(value) >= 1e5 || Math.abs(value) < 1e-3)) {
    return value.toExponential(0).replace("+", "");
  }
  return Number(value.toPrecision(6)).toString();
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function polylinePath(xs: number[], ys: number[]): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${i === 0 ? "M" : "L"}${px(xs[i])} ${px(ys[i])}`);
  }
  return parts.join("");
}

// Closed region between an upper and a lower curve sharing x positions.
export function bandPath(xs: number[], upper: number[], lower: number[]): string {
  const forward = polylinePath(xs, upper);
  const backward: string[] = [];
  for (let i = xs.length - 1; i >= 0; i--) {
    backward.push(`L${px(xs[i])} ${px(lower[i])}`);
  }
  return `${forward}${backward.join("")}Z`;
}

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 860,
  height: 520,
  margin: { top: 42, right: 30, bottom: 56, left: 72 },
};

export function plotArea(frame: Frame): { x0: number; x1: number; y0: number; y1: number } {
  return {
    x0: frame.margin.left,
    x1: frame.width - frame.margin.right,
    y0: frame.height - frame.margin.bottom,
    y1: frame.margin.top,
  };
}

export function axes(
  frame: Frame,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
): string {
  const { x0, x1, y0, y1 } = plotArea(frame);
  const parts: string[] = [];
  parts.push(
    `<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x1)}" y2="${px(y0)}" stroke="#333"/>`,
    `<line x1="${px(x0)}" y1="${px(y0)}" x2="${px(x0)}" y2="${px(y1)}" stroke="#333"/>`,
  );
  const xTicks =
    xScale.kind === "log" ? logTicks(xScale.domain) : linearTicks(xScale.domain);
  for (const tick of xTicks) {
    const x = xScale(tick);
    parts.push(
      `<line x1="${px(x)}" y1="${px(y0)}" x2="${px(x)}" y2="${px(y0 + 5)}" stroke="#333"/>`,
      `<text x="${px(x)}" y="${px(y0 + 20)}" text-anchor="middle" font-size="12">${formatTick(tick)}</text>`,
    );
  }
  const yTicks = linearTicks(yScale.domain);
  for (const tick of yTicks) {
    const y = yScale(tick);
    parts.push(
      `<line x1="${px(x0 - 5)}" y1="${px(y)}" x2="${px(x0)}" y2="${px(y)}" stroke="#333"/>`,
      `<text x="${px(x0 - 8)}" y="${px(y + 4)}" text-anchor="end" font-size="12">${formatTick(tick)}</text>`,
    );
  }
  const xMid = (x0 + x1) / 2;
  const yMid = (y0 + y1) / 2;
  parts.push(
    `<text x="${px(xMid)}" y="${px(frame.height - 12)}" text-anchor="middle" font-size="14">${escapeXml(xLabel)}</text>`,
    `<text x="18" y="${px(yMid)}" text-anchor="middle" font-size="14" transform="rotate(-90 18 ${px(yMid)})">${escapeXml(yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function svgDocument(
  frame: Frame,
  body: string,
  attributes: Record<string, string> = {},
): string {
  const extra = Object.entries(attributes)
    .map(([key, value]) => ` ${key}="${escapeXml(value)}"`)
    .join("");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" ` +
    `height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}"` +
    `${extra} font-family="sans-serif">\n` +
    `<rect width="${frame.width}" height="${frame.height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export const PALETTE = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
];

export { px };
