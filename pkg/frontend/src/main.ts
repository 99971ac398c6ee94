/**
 * Command line wiring: scan CSVs in, one SVG out.
 *
 * Usage:
 *   trapdyn-figure --out figure.svg [--window LO:HI] \
 *       [--label "p=1/3"] scan1.csv [--label "p=0.95"] scan2.csv
 *
 * Each CSV becomes one panel with both series (crosses keep Im G, circles
 * drop it), re-fitted over the declared window with the same least-squares
 * convention as the producing pipeline.  Nothing is recomputed from
 * measures; the CSV is the single source of numbers.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseScanCsv } from "./csv.js";
import { fitPowerLaw } from "./fit.js";
import { renderFigure, type PanelSpec } from "./svg.js";

export interface CliOptions {
  out: string;
  window?: [number, number];
  inputs: Array<{ path: string; label: string }>;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): CliOptions {
  let out: string | undefined;
  let window: [number, number] | undefined;
  let pendingLabel: string | undefined;
  const inputs: Array<{ path: string; label: string }> = [];

  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i]!;
    if (arg === "--out") {
      out = argv[++i];
      if (out === undefined) throw new UsageError("--out needs a path");
    } else if (arg === "--window") {
      const raw = argv[++i];
      const match = raw?.match(/^(\d+):(\d+)$/);
      if (!match) throw new UsageError("--window needs LO:HI with integer indices");
      window = [Number(match[1]), Number(match[2])];
    } else if (arg === "--label") {
      pendingLabel = argv[++i];
      if (pendingLabel === undefined) throw new UsageError("--label needs a name");
    } else if (arg.startsWith("--")) {
      throw new UsageError(`unknown option ${arg}`);
    } else {
      inputs.push({ path: arg, label: pendingLabel ?? basename(arg).replace(/\.[^.]*$/, "") });
      pendingLabel = undefined;
    }
  }
  if (out === undefined) throw new UsageError("--out is required");
  if (inputs.length === 0) throw new UsageError("at least one scan CSV is required");
  if (pendingLabel !== undefined) throw new UsageError("--label given without a following CSV");
  return { out, window, inputs };
}

export function buildPanel(csvText: string, label: string, source: string, window?: [number, number]): PanelSpec {
  const rows = parseScanCsv(csvText, source);
  const withIm = rows.map((row) => [row.oneMinusR, row.withIm] as const);
  const noIm = rows.map((row) => [row.oneMinusR, row.noIm] as const);
  return {
    title: label,
    series: [
      {
        name: "with Im G",
        points: withIm,
        marker: "cross",
        slope: fitPowerLaw(withIm, window).exponent,
      },
      {
        name: "without Im G",
        points: noIm,
        marker: "circle",
        slope: fitPowerLaw(noIm, window).exponent,
      },
    ],
  };
}

export function run(argv: string[], log: (line: string) => void = console.error): number {
  let options: CliOptions;
  try {
    options = parseArgs(argv);
  } catch (err) {
    log(`usage error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const panels = options.inputs.map(({ path, label }) =>
      buildPanel(readFileSync(path, "utf8"), label, path, options.window),
    );
    writeFileSync(options.out, renderFigure(panels), "utf8");
  } catch (err) {
    log(`error: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}
