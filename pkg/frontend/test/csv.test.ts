import { describe, expect, it } from "vitest";

import { parseScanCsv, ScanCsvError } from "../src/csv.js";

const GOOD =
  "r,one_minus_r,Jtilde_true,Jtilde_noIm\n0.9375,0.0625,0.88,0.93\n0.96875,0.03125,0.84,0.91\n";

describe("parseScanCsv", () => {
  it("reads the scan contract", () => {
    const rows = parseScanCsv(GOOD, "good.csv");
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({ r: 0.9375, oneMinusR: 0.0625, withIm: 0.88, noIm: 0.93 });
  });

  it("rejects an empty file", () => {
    expect(() => parseScanCsv("", "empty.csv")).toThrow(ScanCsvError);
    expect(() => parseScanCsv("\n\n", "empty.csv")).toThrow(/empty/);
  });

  it("rejects a header that breaks the contract", () => {
    expect(() => parseScanCsv("a,b,c,d\n1,2,3,4\n", "bad.csv")).toThrow(/does not match/);
  });

  it("rejects a header with no rows", () => {
    expect(() => parseScanCsv(GOOD.split("\n")[0]! + "\n", "hdr.csv")).toThrow(/no data rows/);
  });

  it("rejects malformed numeric rows", () => {
    expect(() =>
      parseScanCsv("r,one_minus_r,Jtilde_true,Jtilde_noIm\n0.9,0.1,hello,0.9\n", "nan.csv"),
    ).toThrow(/non-numeric/);
    expect(() =>
      parseScanCsv("r,one_minus_r,Jtilde_true,Jtilde_noIm\n0.9,0.1,0.5\n", "short.csv"),
    ).toThrow(/fields/);
  });
});
