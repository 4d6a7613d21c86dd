import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { parseSweepCsv, SchemaMismatch } from "../src/csv.js";
import {
  BLUE,
  findCrossings,
  RED,
  render,
  renderCrossing,
  renderHeatmap,
  renderOverlay,
} from "../src/figures.js";
import { divergingColor, fmt, niceTicks } from "../src/svg.js";

const load = (name: string) =>
  parseSweepCsv(readFileSync(new URL(`../fixtures/${name}`, import.meta.url), "utf8"));

describe("svg primitives", () => {
  it("formats numbers deterministically", () => {
    expect(fmt(-0)).toBe("0");
    expect(fmt(0.5)).toBe("0.5");
    expect(fmt(1 / 3)).toBe("0.33333333");
    expect(fmt(Number.NaN)).toBe("0");
  });

  it("produces fixed tick sets", () => {
    expect(niceTicks(0, 10)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(niceTicks(-50, 50)).toEqual([-40, -20, 0, 20, 40]);
  });

  it("maps the diverging scale with white at zero", () => {
    expect(divergingColor(0)).toBe("#ffffff");
    expect(divergingColor(-1)).toBe("#2166ac");
    expect(divergingColor(1)).toBe("#fde725");
  });
});

describe("overlay figure", () => {
  it("draws exact lines and reduced-model dots in blue/red", () => {
    const svg = renderOverlay([load("fig2-small.csv")]);
    expect(svg.startsWith('<svg xmlns="http://www.w3.org/2000/svg"')).toBe(true);
    expect(svg).toContain(BLUE);
    expect(svg).toContain(RED);
    expect((svg.match(/<circle /g) ?? []).length).toBeGreaterThan(10);
    expect((svg.match(/<path /g) ?? []).length).toBeGreaterThanOrEqual(8);
    // four panels: each leg at each phase
    expect((svg.match(/rho14 at phi0=/g) ?? []).length).toBe(2);
    expect((svg.match(/rho24 at phi0=/g) ?? []).length).toBe(2);
  });

  it("rejects inputs without the reduced-model columns", () => {
    expect(() => renderOverlay([load("fig4-small.csv")]))
      .toThrow(SchemaMismatch);
  });
});

describe("heatmap figure", () => {
  it("renders two gain panels as colored cells", () => {
    const svg = renderHeatmap([load("fig3-small.csv")]);
    expect(svg).toContain("alpha14 (1/m)");
    expect(svg).toContain("alpha24 (1/m)");
    const cells = (svg.match(/<rect /g) ?? []).length;
    expect(cells).toBeGreaterThan(2 * 16 * 17);
  });

  it("needs a 2-D grid", () => {
    expect(() => renderHeatmap([load("fig4-small.csv")]))
      .toThrow(SchemaMismatch);
  });
});

describe("crossing figure", () => {
  it("draws the dashed zero line and three stars", () => {
    const svg = renderCrossing([load("fig4-small.csv")]);
    expect(svg).toContain('stroke-dasharray="6 4"');
    expect((svg.match(/<polygon /g) ?? []).length).toBe(3);
    expect(svg).toContain(BLUE);
    expect(svg).toContain(RED);
  });

  it("skips zero-response crossings", () => {
    const phi = [0, 1, 2, 3];
    const a14 = [1e-9, -1e-9, 2.0, 0.0];
    const a24 = [-1e-9, 1e-9, 0.0, 2.0];
    const found = findCrossings(phi, a14, a24);
    expect(found).toHaveLength(1);
    expect(found[0]!.phi0).toBeCloseTo(2.5, 12);
    expect(found[0]!.gain).toBeCloseTo(1.0, 12);
  });
});

describe("determinism", () => {
  it("same input, same bytes", () => {
    for (const [kind, file] of [
      ["overlay", "fig2-small.csv"],
      ["heatmap", "fig3-small.csv"],
      ["crossing", "fig4-small.csv"],
    ] as const) {
      const a = render(kind, [load(file)]);
      const b = render(kind, [load(file)]);
      expect(Buffer.from(a).equals(Buffer.from(b))).toBe(true);
    }
  });
});
