#!/usr/bin/env node
// render --kind <regret|avg_regret|boxplot|cumulative_reward> --in <dir> --out <file>
//        [--log-x | --linear-x] [--x-label <s>] [--y-label <s>] [--title <s>]

import { FigureKind, FigureSpec, render } from "./figures.js";

const KINDS: FigureKind[] = ["regret", "avg_regret", "boxplot", "cumulative_reward"];

export function parseArgs(argv: string[]): FigureSpec {
  if (argv[0] !== "render") {
    throw new Error(`unknown command "${argv[0] ?? ""}"; expected "render"`);
  }
  const options = new Map<string, string>();
  const flags = new Set<string>();
  for (let i = 1; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) throw new Error(`unexpected argument "${arg}"`);
    const name = arg.slice(2);
    if (name === "log-x" || name === "linear-x") {
      flags.add(name);
      continue;
    }
    const value = argv[++i];
    if (value === undefined) throw new Error(`missing value for --${name}`);
    options.set(name, value);
  }
  const kind = options.get("kind") as FigureKind | undefined;
  if (!kind || !KINDS.includes(kind)) {
    throw new Error(`--kind must be one of ${KINDS.join(", ")}`);
  }
  const inputDir = options.get("in");
  const outPath = options.get("out");
  if (!inputDir || !outPath) throw new Error("--in and --out are required");
  const spec: FigureSpec = { kind, inputDir, outPath };
  if (flags.has("log-x")) spec.logX = true;
  if (flags.has("linear-x")) spec.logX = false;
  if (options.has("x-label")) spec.xLabel = options.get("x-label");
  if (options.has("y-label")) spec.yLabel = options.get("y-label");
  if (options.has("title")) spec.title = options.get("title");
  return spec;
}

export function runCli(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    render(spec);
    console.log(`wrote ${spec.outPath}`);
    return 0;
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(runCli(process.argv.slice(2)));
}
