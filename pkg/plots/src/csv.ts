// Strict readers for the CSV schemas written by the hellinger-bandits CLI.

import { readFileSync } from "fs";

export interface RawTable {
  header: string[];
  rows: string[][];
}

export function readCsv(path: string): RawTable {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter(line => line.length > 0);
  if (lines.length === 0) throw new Error(`empty CSV file ${path}`);
  const header = lines[0].split(",");
  const rows = lines.slice(1).map(line => line.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(`ragged row in ${path}: expected ${header.length} fields`);
    }
  }
  return { header, rows };
}

export function requireColumns(
  table: RawTable,
  required: string[],
  path: string,
): void {
  for (const column of required) {
    if (!table.header.includes(column)) {
      throw new Error(`missing column "${column}" in ${path}`);
    }
  }
}

function toNumber(field: string, path: string): number {
  const value = Number(field);
  if (!Number.isFinite(value)) {
    throw new Error(`non-numeric value "${field}" in ${path}`);
  }
  return value;
}

export interface Curves {
  t: number[];
  labels: string[];
  series: Map<string, number[]>;
}

// Wide per-checkpoint files: a "t" column plus one column per policy.
export function readCurves(path: string): Curves {
  const table = readCsv(path);
  requireColumns(table, ["t"], path);
  const tIndex = table.header.indexOf("t");
  const labels = table.header.filter(name => name !== "t");
  const t = table.rows.map(row => toNumber(row[tIndex], path));
  const series = new Map<string, number[]>();
  for (const label of labels) {
    const index = table.header.indexOf(label);
    series.set(label, table.rows.map(row => toNumber(row[index], path)));
  }
  return { t, labels, series };
}

// Long per-epoch file: policy,epoch,regret.
export function readFinalRegrets(path: string): Map<string, number[]> {
  const table = readCsv(path);
  requireColumns(table, ["policy", "epoch", "regret"], path);
  const policyIndex = table.header.indexOf("policy");
  const regretIndex = table.header.indexOf("regret");
  const groups = new Map<string, number[]>();
  for (const row of table.rows) {
    const policy = row[policyIndex];
    if (!groups.has(policy)) groups.set(policy, []);
    groups.get(policy)!.push(toNumber(row[regretIndex], path));
  }
  return groups;
}

// bounds.csv: t,upper_bound,lower_bound.
export interface BoundCurves {
  t: number[];
  upper: number[];
  lower: number[];
}

export function readBounds(path: string): BoundCurves {
  const table = readCsv(path);
  requireColumns(table, ["t", "upper_bound", "lower_bound"], path);
  const tIndex = table.header.indexOf("t");
  const upIndex = table.header.indexOf("upper_bound");
  const loIndex = table.header.indexOf("lower_bound");
  return {
    t: table.rows.map(row => toNumber(row[tIndex], path)),
    upper: table.rows.map(row => toNumber(row[upIndex], path)),
    lower: table.rows.map(row => toNumber(row[loIndex], path)),
  };
}
