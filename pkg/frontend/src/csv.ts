/**
 * Parser for the relmass CSV schema: '#'-prefixed comment lines, then a
 * header row (`t` followed by one or more value columns), then numeric rows.
 */

export class SchemaError extends Error {}

export interface Table {
  /** column names, first one is the abscissa */
  columns: string[];
  /** row-major numeric data, one entry per column */
  rows: number[][];
  /** leading '#' comment lines, without the marker */
  comments: string[];
}

export function parseCsv(text: string): Table {
  const comments: string[] = [];
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  let header: string[] | null = null;
  const rows: number[][] = [];
  for (const line of lines) {
    if (line.startsWith("#")) {
      comments.push(line.slice(1).trim());
      continue;
    }
    if (header === null) {
      header = line.split(",").map((c) => c.trim());
      if (header.length < 2) {
        throw new SchemaError(
          `header must have an abscissa and at least one value column, got "${line}"`,
        );
      }
      continue;
    }
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row has ${cells.length} cells, header has ${header.length}: "${line}"`,
      );
    }
    const row = cells.map((cell) => Number(cell));
    const bad = row.findIndex((x) => !Number.isFinite(x));
    if (bad >= 0) {
      throw new SchemaError(`non-numeric cell "${cells[bad]}" in row "${line}"`);
    }
    rows.push(row);
  }
  if (header === null) {
    throw new SchemaError("no header row found");
  }
  if (rows.length < 2) {
    throw new SchemaError(`need at least two data rows, got ${rows.length}`);
  }
  return { columns: header, rows, comments };
}

/** Extract one named column as a flat array. */
export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `missing column "${name}" (have: ${table.columns.join(", ")})`,
    );
  }
  return table.rows.map((row) => row[idx]);
}
