// The four figure kinds, rendered from the CLI's CSV output directory:
//   regret            mean lines + 25-75% bands, dashed bound overlays, log-x
//   avg_regret        cumulative regret divided by t, linear axes
//   boxplot           final-step regret distribution per policy
//   cumulative_reward cumulative reward lines from the traffic comparison

import { existsSync, writeFileSync } from "fs";
import { join } from "path";

import { readBounds, readCurves, readFinalRegrets } from "./csv.js";
import { boxStats } from "./quantiles.js";
import {
  DEFAULT_FRAME,
  Frame,
  PALETTE,
  Scale,
  axes,
  bandPath,
  escapeXml,
  linearScale,
  logScale,
  plotArea,
  polylinePath,
  px,
  svgDocument,
} from "./svg.js";

export type FigureKind = "regret" | "avg_regret" | "boxplot" | "cumulative_reward";

export interface FigureSpec {
  kind: FigureKind;
  inputDir: string;
  outPath: string;
  logX?: boolean;
  xLabel?: string;
  yLabel?: string;
  title?: string;
}

interface Layer {
  element: string;
  legend?: { label: string; stroke: string; dash?: string };
}

function finiteExtent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) throw new Error("no finite values to plot");
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

function legendBox(frame: Frame, entries: { label: string; stroke: string; dash?: string }[]): string {
  const { x0, y1 } = plotArea(frame);
  const parts: string[] = [];
  entries.forEach((entry, i) => {
    const y = y1 + 16 + 18 * i;
    const dash = entry.dash ? ` stroke-dasharray="${entry.dash}"` : "";
    parts.push(
      `<line x1="${px(x0 + 8)}" y1="${px(y)}" x2="${px(x0 + 36)}" y2="${px(y)}" stroke="${entry.stroke}" stroke-width="2"${dash}/>`,
      `<text x="${px(x0 + 42)}" y="${px(y + 4)}" font-size="12">${escapeXml(entry.label)}</text>`,
    );
  });
  return parts.join("\n");
}

function title(frame: Frame, text: string): string {
  return `<text x="${px(frame.width / 2)}" y="24" text-anchor="middle" font-size="16">${escapeXml(text)}</text>`;
}

function curveFigure(spec: FigureSpec, frame: Frame): string {
  const isRegret = spec.kind === "regret";
  const isAverage = spec.kind === "avg_regret";
  const fileName = spec.kind === "cumulative_reward" ? "cumulative_reward.csv" : "regret_mean.csv";
  const mean = readCurves(join(spec.inputDir, fileName));
  const logX = spec.logX ?? isRegret;

  const transform = (values: number[]): number[] =>
    isAverage ? values.map((v, i) => v / mean.t[i]) : values;

  const yValues: number[] = [];
  for (const label of mean.labels) yValues.push(...transform(mean.series.get(label)!));

  let q25: ReturnType<typeof readCurves> | undefined;
  let q75: ReturnType<typeof readCurves> | undefined;
  if (isRegret) {
    q25 = readCurves(join(spec.inputDir, "regret_q25.csv"));
    q75 = readCurves(join(spec.inputDir, "regret_q75.csv"));
    for (const label of mean.labels) {
      yValues.push(...(q25.series.get(label) ?? []));
      yValues.push(...(q75.series.get(label) ?? []));
    }
  }

  let bounds;
  const boundsPath = join(spec.inputDir, "bounds.csv");
  if (isRegret && existsSync(boundsPath)) {
    bounds = readBounds(boundsPath);
    yValues.push(...bounds.upper, ...bounds.lower);
  }

  const area = plotArea(frame);
  const xDomain = finiteExtent(mean.t);
  const xScale: Scale = logX
    ? logScale(xDomain, [area.x0, area.x1])
    : linearScale(xDomain, [area.x0, area.x1]);
  const [yLo, yHi] = finiteExtent(yValues);
  const yScale = linearScale([Math.min(0, yLo), yHi * 1.04], [area.y0, area.y1]);

  const layers: Layer[] = [];
  mean.labels.forEach((label, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (isRegret && q25 && q75) {
      const lower = q25.series.get(label);
      const upper = q75.series.get(label);
      if (lower && upper) {
        layers.push({
          element: `<path d="${bandPath(mean.t.map(xScale), upper.map(yScale), lower.map(yScale))}" fill="${color}" fill-opacity="0.2" stroke="none"/>`,
        });
      }
    }
    const values = transform(mean.series.get(label)!);
    layers.push({
      element: `<path d="${polylinePath(mean.t.map(xScale), values.map(yScale))}" fill="none" stroke="${color}" stroke-width="2"/>`,
      legend: { label, stroke: color },
    });
  });

  if (bounds) {
    layers.push({
      element: `<path d="${polylinePath(bounds.t.map(xScale), bounds.upper.map(yScale))}" fill="none" stroke="#555" stroke-width="1.5" stroke-dasharray="6 4"/>`,
      legend: { label: "upper bound", stroke: "#555", dash: "6 4" },
    });
    layers.push({
      element: `<path d="${polylinePath(bounds.t.map(xScale), bounds.lower.map(yScale))}" fill="none" stroke="#999" stroke-width="1.5" stroke-dasharray="2 4"/>`,
      legend: { label: "lower bound", stroke: "#999", dash: "2 4" },
    });
  }

  const yLabelDefault = isAverage ? "average pseudo-regret" : isRegret ? "pseudo-regret" : "cumulative reward";
  const body = [
    title(frame, spec.title ?? ""),
    axes(frame, xScale, yScale, spec.xLabel ?? "t", spec.yLabel ?? yLabelDefault),
    ...layers.map(layer => layer.element),
    legendBox(frame, layers.flatMap(layer => (layer.legend ? [layer.legend] : []))),
  ].join("\n");
  return svgDocument(frame, body, { "data-x-scale": xScale.kind });
}

function boxplotFigure(spec: FigureSpec, frame: Frame): string {
  const groups = readFinalRegrets(join(spec.inputDir, "final_regret.csv"));
  const labels = [...groups.keys()];
  const area = plotArea(frame);
  const allValues = labels.flatMap(label => groups.get(label)!);
  const [yLo, yHi] = finiteExtent(allValues);
  const pad = 0.05 * (yHi - yLo || 1);
  const yScale = linearScale([yLo - pad, yHi + pad], [area.y0, area.y1]);
  const xScale = linearScale([0, labels.length], [area.x0, area.x1]);

  const parts: string[] = [];
  const boxWidth = Math.min(60, (area.x1 - area.x0) / (labels.length * 2));
  labels.forEach((label, i) => {
    const stats = boxStats(groups.get(label)!);
    const color = PALETTE[i % PALETTE.length];
    const cx = xScale(i + 0.5);
    const left = cx - boxWidth / 2;
    const right = cx + boxWidth / 2;
    parts.push(
      `<line x1="${px(cx)}" y1="${px(yScale(stats.loWhisker))}" x2="${px(cx)}" y2="${px(yScale(stats.q1))}" stroke="#333"/>`,
      `<line x1="${px(cx)}" y1="${px(yScale(stats.q3))}" x2="${px(cx)}" y2="${px(yScale(stats.hiWhisker))}" stroke="#333"/>`,
      `<line x1="${px(cx - boxWidth / 4)}" y1="${px(yScale(stats.loWhisker))}" x2="${px(cx + boxWidth / 4)}" y2="${px(yScale(stats.loWhisker))}" stroke="#333"/>`,
      `<line x1="${px(cx - boxWidth / 4)}" y1="${px(yScale(stats.hiWhisker))}" x2="${px(cx + boxWidth / 4)}" y2="${px(yScale(stats.hiWhisker))}" stroke="#333"/>`,
      `<rect x="${px(left)}" y="${px(yScale(stats.q3))}" width="${px(boxWidth)}" height="${px(yScale(stats.q1) - yScale(stats.q3))}" fill="${color}" fill-opacity="0.45" stroke="#333"/>`,
      `<line x1="${px(left)}" y1="${px(yScale(stats.median))}" x2="${px(right)}" y2="${px(yScale(stats.median))}" stroke="#333" stroke-width="2"/>`,
      `<text x="${px(cx)}" y="${px(area.y0 + 20)}" text-anchor="middle" font-size="12">${escapeXml(label)}</text>`,
    );
    for (const outlier of stats.outliers) {
      parts.push(
        `<circle cx="${px(cx)}" cy="${px(yScale(outlier))}" r="2.5" fill="none" stroke="${color}"/>`,
      );
    }
  });

  // y axis only; category labels replace x ticks
  const yTicksBody = axes(
    frame,
    linearScale([0, 1], [area.x0, area.x1]),
    yScale,
    spec.xLabel ?? "policy",
    spec.yLabel ?? "final pseudo-regret",
  )
    .split("\n")
    .filter(line => !(line.includes(`y1="${px(area.y0)}"`) && line.includes(`y2="${px(area.y0 + 5)}"`)))
    .filter(line => !(line.includes(`y="${px(area.y0 + 20)}"`)))
    .join("\n");

  const body = [title(frame, spec.title ?? ""), yTicksBody, ...parts].join("\n");
  return svgDocument(frame, body, { "data-x-scale": "category" });
}

export function render(spec: FigureSpec, frame: Frame = DEFAULT_FRAME): string {
  let svg: string;
  switch (spec.kind) {
    case "regret":
    case "avg_regret":
    case "cumulative_reward":
      svg = curveFigure(spec, frame);
      break;
    case "boxplot":
      svg = boxplotFigure(spec, frame);
      break;
    default:
      throw new Error(`unknown figure kind "${(spec as FigureSpec).kind}"`);
  }
  writeFileSync(spec.outPath, svg, "utf8");
  return svg;
}
