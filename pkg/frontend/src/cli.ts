#!/usr/bin/env node
/**
 * render_figs <preset> --in <csv>[,<csv>...] --out <svg>
 *
 * Presets: fig2 (overlay), fig3 (heatmap), fig4 (crossing).  Inputs must be
 * sweep CSVs produced by the doublelambda CLI; when several are overlaid
 * their config-hash lines must agree.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseSweepCsv, SchemaMismatch } from "./csv.js";
import { PRESET_KINDS, render } from "./figures.js";

function usage(): string {
  return "usage: render_figs <fig2|fig3|fig4> --in a.csv[,b.csv] --out out.svg\n";
}

export function main(argv: string[]): number {
  const args = [...argv];
  const preset = args.shift();
  if (preset === undefined || !(preset in PRESET_KINDS)) {
    process.stderr.write(usage());
    return 1;
  }
  let inputs: string[] = [];
  let out: string | undefined;
  while (args.length > 0) {
    const flag = args.shift();
    if (flag === "--in") {
      const v = args.shift();
      if (v === undefined) break;
      inputs = inputs.concat(v.split(","));
    } else if (flag === "--out") {
      out = args.shift();
    } else {
      process.stderr.write(`unknown argument: ${flag}\n${usage()}`);
      return 1;
    }
  }
  if (inputs.length === 0 || out === undefined) {
    process.stderr.write(usage());
    return 1;
  }
  try {
    const tables = inputs.map((p) => parseSweepCsv(readFileSync(p, "utf8")));
    const svg = render(PRESET_KINDS[preset]!, tables);
    writeFileSync(out, svg, "utf8");
    return 0;
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      process.stderr.write(`schema mismatch: ${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
