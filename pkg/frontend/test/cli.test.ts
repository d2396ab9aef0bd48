import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseArgs, run } from "../src/main.js";

const FIX = join(__dirname, "fixtures");

describe("parseArgs", () => {
  it("collects csvs, titles and flags", () => {
    const args = parseArgs([
      "a.csv",
      "b.csv",
      "--out",
      "fig.svg",
      "--titles",
      "left",
      "right",
      "--log-x",
    ]);
    expect(args.csvs).toEqual(["a.csv", "b.csv"]);
    expect(args.titles).toEqual(["left", "right"]);
    expect(args.logX).toBe(true);
    expect(args.logY).toBe(false);
  });

  it("rejects missing --out, bad flags, and title count mismatch", () => {
    expect(() => parseArgs(["a.csv"])).toThrowError(/--out/);
    expect(() => parseArgs([])).toThrowError(/usage/);
    expect(() => parseArgs(["a.csv", "--out", "x", "--wat"])).toThrowError(/--wat/);
    expect(() => parseArgs(["a.csv", "--out", "x", "--titles", "t1", "t2"])).toThrowError(
      /2 titles for 1 panels/,
    );
  });
});

describe("run", () => {
  it("writes the two-panel figure from the harness tables", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "fig.svg");
    const rc = run([
      join(FIX, "rademacher.csv"),
      join(FIX, "uniform.csv"),
      "--out",
      out,
      "--titles",
      "rademacher^5",
      "uniform^5",
    ]);
    expect(rc).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.match(/<g class="panel"/g)?.length).toBe(2);
    expect(svg.match(/<polyline class="series"/g)?.length).toBe(6);
  });

  it("fails with a message on schema mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "n,method,sd_radius\n1,a,0\n");
    const rc = run([bad, "--out", join(dir, "fig.svg")]);
    expect(rc).toBe(1);
  });

  it("fails on unreadable input", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    expect(run([join(dir, "nope.csv"), "--out", join(dir, "f.svg")])).toBe(1);
  });
});
