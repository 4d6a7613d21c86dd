/**
 * Reader for the sweep CSV interface:
 *   line 1: `# config-hash=<hex>`
 *   line 2: comma-separated column headers
 *   rows:   floats at 17 significant digits; the trailing `error` column is
 *           free text and empty on healthy points.
 *
 * Failed grid points carry NaN cells plus an error marker; renderers skip
 * them point-wise rather than rejecting the file.
 */

export class SchemaMismatch extends Error {
  constructor(message: string, public readonly column?: string) {
    super(column ? `${message} (column: ${column})` : message);
    this.name = "SchemaMismatch";
  }
}

export interface SweepTable {
  configHash: string;
  header: string[];
  /** numeric columns by name; the `error` column is kept as strings */
  columns: Map<string, Float64Array>;
  errors: string[];
  rows: number;
}

const HASH_RE = /^# config-hash=([0-9a-f]*)$/;

export function parseSweepCsv(text: string): SweepTable {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length < 2) {
    throw new SchemaMismatch("CSV needs a config-hash line and a header line");
  }
  const hashMatch = HASH_RE.exec(lines[0]!);
  if (!hashMatch) {
    throw new SchemaMismatch(
      `first line must be '# config-hash=<hex>', got ${JSON.stringify(lines[0])}`,
    );
  }
  const header = lines[1]!.split(",");
  if (header[header.length - 1] !== "error") {
    throw new SchemaMismatch("last column must be 'error'", "error");
  }
  const numericNames = header.slice(0, -1);
  const rows = lines.length - 2;
  const data = numericNames.map(() => new Float64Array(rows));
  const errors: string[] = new Array(rows).fill("");
  for (let r = 0; r < rows; r++) {
    const line = lines[r + 2]!;
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatch(
        `row ${r + 1} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    for (let c = 0; c < numericNames.length; c++) {
      data[c]![r] = Number(cells[c]);
    }
    errors[r] = cells[header.length - 1]!;
  }
  const columns = new Map<string, Float64Array>();
  numericNames.forEach((name, i) => columns.set(name, data[i]!));
  return { configHash: hashMatch[1]!, header, columns, errors, rows };
}

export function requireColumns(table: SweepTable, names: string[]): void {
  for (const name of names) {
    if (!table.columns.has(name)) {
      throw new SchemaMismatch("missing required column", name);
    }
  }
}

export function column(table: SweepTable, name: string): Float64Array {
  const col = table.columns.get(name);
  if (col === undefined) {
    throw new SchemaMismatch("missing required column", name);
  }
  return col;
}

/** Distinct values of a grid axis, in first-appearance order. */
export function axisValues(table: SweepTable, name: string): number[] {
  const col = column(table, name);
  const seen: number[] = [];
  for (const v of col) {
    if (!seen.includes(v)) seen.push(v);
  }
  return seen;
}

export function checkHashesMatch(tables: SweepTable[]): void {
  const hashes = new Set(tables.map((t) => t.configHash));
  if (hashes.size > 1) {
    throw new SchemaMismatch(
      `overlaid inputs come from different configurations: ${[...hashes].join(", ")}`,
    );
  }
}
