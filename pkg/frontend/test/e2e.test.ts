/**
 * End-to-end check over the real interface: regenerate the three preset
 * sweeps with the doublelambda CLI, render each through the compiled
 * render_figs binary, and verify conventions plus byte-identical re-renders.
 * Skips when the doublelambda CLI or the compiled bundle is missing.
 */

import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

const CLI = join(__dirname, "..", "dist", "cli.js");

function haveTools(): boolean {
  if (!existsSync(CLI)) return false;
  const probe = spawnSync("doublelambda", ["--version"], { encoding: "utf8" });
  return probe.status === 0;
}

const enabled = haveTools();

describe.skipIf(!enabled)("preset round trip", () => {
  const work = enabled ? mkdtempSync(join(tmpdir(), "renderfigs-")) : "";

  function sweep(preset: string, out: string): void {
    const res = spawnSync("doublelambda",
      ["sweep", "--preset", preset, "--out", out], { encoding: "utf8" });
    expect(res.status, res.stderr).toBe(0);
  }

  function renderTwice(preset: string, input: string): string {
    const outA = join(work, `${preset}-a.svg`);
    const outB = join(work, `${preset}-b.svg`);
    for (const out of [outA, outB]) {
      const res = spawnSync("node", [CLI, preset, "--in", input, "--out", out],
                            { encoding: "utf8" });
      expect(res.status, res.stderr).toBe(0);
    }
    const a = readFileSync(outA);
    expect(a.equals(readFileSync(outB))).toBe(true);
    return a.toString("utf8");
  }

  it("fig2 renders the overlay deterministically", () => {
    const csv = join(work, "fig2.csv");
    sweep("fig2", csv);
    const svg = renderTwice("fig2", csv);
    expect(svg).toContain("#1f4fa0");
    expect(svg).toContain("#c62828");
    expect(svg).toContain("<circle ");
  }, 300000);

  it("fig3 renders the gain maps deterministically", () => {
    const csv = join(work, "fig3.csv");
    sweep("fig3", csv);
    const svg = renderTwice("fig3", csv);
    expect(svg).toContain("alpha14 (1/m)");
  }, 300000);

  it("fig4 renders the crossing plot with three stars", () => {
    const csv = join(work, "fig4.csv");
    sweep("fig4", csv);
    const svg = renderTwice("fig4", csv);
    expect(svg).toContain('stroke-dasharray="6 4"');
    expect((svg.match(/<polygon /g) ?? []).length).toBe(3);
  }, 300000);
});
