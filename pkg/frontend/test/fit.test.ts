import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseScanCsv } from "../src/csv.js";
import { fitPowerLaw } from "../src/fit.js";

const DATA = join(dirname(fileURLToPath(import.meta.url)), "..", "testdata");

interface ExponentJson {
  exponent: number;
  intercept: number;
  residual: number;
  window: [number, number];
}

function fixture(name: string): ExponentJson {
  return JSON.parse(readFileSync(join(DATA, name), "utf8")) as ExponentJson;
}

function scanPoints(name: string, column: "withIm" | "noIm"): Array<readonly [number, number]> {
  const rows = parseScanCsv(readFileSync(join(DATA, name), "utf8"), name);
  return rows.map((row) => [row.oneMinusR, row[column]] as const);
}

describe("fitPowerLaw", () => {
  it("recovers an exact power law", () => {
    const pts = [1, 2, 3, 4, 5].map((k) => [2 ** -k, 3 * 2 ** (-0.5 * k)] as const);
    const fit = fitPowerLaw(pts);
    expect(Math.abs(fit.exponent - 0.5)).toBeLessThan(1e-12);
    expect(fit.residual).toBeLessThan(1e-12);
  });

  it("rejects degenerate inputs", () => {
    expect(() => fitPowerLaw([[1, 1], [2, 2]])).toThrow(/at least 3/);
    expect(() => fitPowerLaw([[1, 1], [2, -2], [3, 3]])).toThrow(/positive/);
    expect(() => fitPowerLaw([[1, 1], [2, 2], [3, 3]], [2, 1])).toThrow(/window/);
  });

  const cases: Array<[string, string, "withIm" | "noIm"]> = [
    ["bernoulli_p13.jtilde.csv", "bernoulli_p13_withim.exponent.json", "withIm"],
    ["bernoulli_p13.jtilde.csv", "bernoulli_p13_noim.exponent.json", "noIm"],
    ["bernoulli_p95.jtilde.csv", "bernoulli_p95_withim.exponent.json", "withIm"],
    ["bernoulli_p95.jtilde.csv", "bernoulli_p95_noim.exponent.json", "noIm"],
    ["dirac.jtilde.csv", "dirac_withim.exponent.json", "withIm"],
    ["dirac.jtilde.csv", "dirac_noim.exponent.json", "noIm"],
  ];

  it.each(cases)("matches the pipeline fit for %s", (csvName, jsonName, column) => {
    const reference = fixture(jsonName);
    const fit = fitPowerLaw(scanPoints(csvName, column), reference.window);
    expect(Math.abs(fit.exponent - reference.exponent)).toBeLessThan(1e-9);
    expect(Math.abs(fit.intercept - reference.intercept)).toBeLessThan(1e-9);
    expect(Math.abs(fit.residual - reference.residual)).toBeLessThan(1e-9);
  });
});
