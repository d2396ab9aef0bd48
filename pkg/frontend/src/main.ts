#!/usr/bin/env node
/**
 * plots <csv>... --out <file> [--titles <t>...] [--log-x] [--log-y]
 *
 * Reads harness radius tables (n,method,mean_radius,sd_radius) and
 * writes a multi-panel SVG line chart: one panel per CSV, one line per
 * method.  No statistics are recomputed here.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { pathToFileURL } from "node:url";

import { buildPlotSpec, renderSvg } from "./chart.js";
import { CsvError, parseRadiusCsv } from "./csv.js";

export interface Args {
  csvs: string[];
  out: string;
  titles: string[];
  logX: boolean;
  logY: boolean;
}

export function parseArgs(argv: string[]): Args {
  const csvs: string[] = [];
  const titles: string[] = [];
  let out = "";
  let logX = false;
  let logY = false;
  let i = 0;
  while (i < argv.length) {
    const a = argv[i];
    if (a === "--out") {
      out = argv[++i] ?? "";
    } else if (a === "--titles") {
      while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
        titles.push(argv[++i]);
      }
    } else if (a === "--log-x") {
      logX = true;
    } else if (a === "--log-y") {
      logY = true;
    } else if (a.startsWith("--")) {
      throw new Error(`unknown flag ${a}`);
    } else {
      csvs.push(a);
    }
    i++;
  }
  if (csvs.length === 0) {
    throw new Error("usage: plots <csv>... --out <file> [--titles <t>...] [--log-x] [--log-y]");
  }
  if (!out) {
    throw new Error("--out is required");
  }
  if (titles.length > 0 && titles.length !== csvs.length) {
    throw new Error(`got ${titles.length} titles for ${csvs.length} panels`);
  }
  return { csvs, out, titles, logX, logY };
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error(`plots: ${(e as Error).message}`);
    return 2;
  }
  try {
    const inputs = args.csvs.map((path, i) => ({
      title: args.titles[i] ?? basename(path).replace(/\.csv$/, ""),
      rows: parseRadiusCsv(readFileSync(path, "utf8"), path),
    }));
    const spec = buildPlotSpec(inputs, args.logX, args.logY);
    writeFileSync(args.out, renderSvg(spec));
    console.error(
      `plots: wrote ${args.out} (${spec.panels.length} panel(s), ` +
        `${spec.panels.reduce((k, p) => k + p.series.length, 0)} line(s))`,
    );
    return 0;
  } catch (e) {
    if (e instanceof CsvError) {
      console.error(`plots: ${e.message}`);
      return 1;
    }
    console.error(`plots: ${(e as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
