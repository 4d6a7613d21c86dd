import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  axisValues,
  checkHashesMatch,
  column,
  parseSweepCsv,
  requireColumns,
  SchemaMismatch,
} from "../src/csv.js";

const fig2 = readFileSync(new URL("../fixtures/fig2-small.csv", import.meta.url), "utf8");
const fig4 = readFileSync(new URL("../fixtures/fig4-small.csv", import.meta.url), "utf8");

describe("parseSweepCsv", () => {
  it("reads the hash line, header, and numeric columns", () => {
    const table = parseSweepCsv(fig2);
    expect(table.configHash).toMatch(/^[0-9a-f]{64}$/);
    expect(table.header[0]).toBe("delta4");
    expect(table.header[table.header.length - 1]).toBe("error");
    expect(table.rows).toBe(82);
    expect(column(table, "rho14_re_exact")).toHaveLength(82);
  });

  it("keeps failed points as NaN cells with an error marker", () => {
    const table = parseSweepCsv(fig2);
    const d4 = column(table, "delta4");
    const eff = column(table, "rho14_re_effective");
    const zeroRows = [...d4.keys()].filter((i) => d4[i] === 0);
    expect(zeroRows.length).toBe(2); // two loop phases at delta4 = 0
    for (const r of zeroRows) {
      expect(Number.isNaN(eff[r])).toBe(true);
      expect(table.errors[r]).toContain("ZeroProbeDetuning");
    }
  });

  it("rejects an empty document", () => {
    expect(() => parseSweepCsv("")).toThrow(SchemaMismatch);
  });

  it("rejects a missing hash line", () => {
    expect(() => parseSweepCsv("a,b,error\n1,2,\n")).toThrow(/config-hash/);
  });

  it("rejects a header without the error column", () => {
    expect(() => parseSweepCsv("# config-hash=ab\na,b\n1,2\n"))
      .toThrow(SchemaMismatch);
  });

  it("rejects ragged rows", () => {
    expect(() =>
      parseSweepCsv("# config-hash=ab\na,b,error\n1,2,\n1,\n"),
    ).toThrow(/row 2/);
  });

  it("names the offending column on mismatch", () => {
    const table = parseSweepCsv(fig4);
    try {
      requireColumns(table, ["alpha14_exact", "rho14_re_effective"]);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaMismatch);
      expect((err as SchemaMismatch).column).toBe("rho14_re_effective");
    }
  });

  it("extracts grid axis values in order", () => {
    const table = parseSweepCsv(fig2);
    const phases = axisValues(table, "phi0");
    expect(phases).toHaveLength(2);
    expect(phases[0]).toBe(0);
    expect(phases[1]).toBeCloseTo(Math.PI / 4, 12);
  });

  it("flags overlaid inputs with different hashes", () => {
    const a = parseSweepCsv(fig2);
    const b = parseSweepCsv(fig2.replace(/^# config-hash=.*$/m,
                                         "# config-hash=deadbeef"));
    expect(() => checkHashesMatch([a, b])).toThrow(/different configurations/);
    expect(() => checkHashesMatch([a, a])).not.toThrow();
  });
});
