import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseArgs, run, UsageError } from "../src/main.js";

const DATA = join(dirname(fileURLToPath(import.meta.url)), "..", "testdata");


describe("parseArgs", () => {
  it("collects labelled inputs and a window", () => {
    const options = parseArgs([
      "--out", "fig.svg",
      "--window", "1:6",
      "--label", "p=1/3", "a.csv",
      "--label", "p=0.95", "b.csv",
    ]);
    expect(options.out).toBe("fig.svg");
    expect(options.window).toEqual([1, 6]);
    expect(options.inputs).toEqual([
      { path: "a.csv", label: "p=1/3" },
      { path: "b.csv", label: "p=0.95" },
    ]);
  });

  it("labels default to the file stem", () => {
    const options = parseArgs(["--out", "f.svg", "scan.jtilde.csv"]);
    expect(options.inputs[0]!.label).toBe("scan.jtilde");
  });

  it("rejects malformed invocations", () => {
    expect(() => parseArgs(["a.csv"])).toThrow(UsageError);
    expect(() => parseArgs(["--out", "f.svg"])).toThrow(/at least one/);
    expect(() => parseArgs(["--out", "f.svg", "--window", "2", "a.csv"])).toThrow(/LO:HI/);
    expect(() => parseArgs(["--out", "f.svg", "--bogus", "a.csv"])).toThrow(/unknown option/);
    expect(() => parseArgs(["--out", "f.svg", "a.csv", "--label", "x"])).toThrow(/without a following/);
  });
});

describe("run", () => {
  it("writes the two-panel figure and exits zero", () => {
    const dir = mkdtempSync(join(tmpdir(), "figure-"));
    const out = join(dir, "figure.svg");
    const messages: string[] = [];
    const code = run(
      [
        "--out", out,
        "--label", "p=1/3", join(DATA, "bernoulli_p13.jtilde.csv"),
        "--label", "p=0.95", join(DATA, "bernoulli_p95.jtilde.csv"),
      ],
      (line) => messages.push(line),
    );
    expect(code).toBe(0);
    expect(messages).toEqual([]);
    expect(existsSync(out)).toBe(true);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect((svg.match(/<g class="panel"/g) ?? []).length).toBe(2);
  });

  it("fails with a message on an empty CSV", () => {
    const dir = mkdtempSync(join(tmpdir(), "figure-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    const messages: string[] = [];
    const code = run(["--out", join(dir, "f.svg"), empty], (line) => messages.push(line));
    expect(code).toBe(1);
    expect(messages.join("\n")).toMatch(/empty/);
  });

  it("fails on a missing input file", () => {
    const dir = mkdtempSync(join(tmpdir(), "figure-"));
    const messages: string[] = [];
    const code = run(["--out", join(dir, "f.svg"), join(dir, "nope.csv")], (m) => messages.push(m));
    expect(code).toBe(1);
    expect(messages.join("\n")).toMatch(/nope.csv/);
  });

  it("reports usage mistakes distinctly", () => {
    const messages: string[] = [];
    const code = run(["--window", "1:2"], (m) => messages.push(m));
    expect(code).toBe(2);
    expect(messages.join("\n")).toMatch(/usage/);
  });
});
