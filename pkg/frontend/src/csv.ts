/**
 * Parser for the harness radius tables: long-format CSV with columns
 * n, method, mean_radius, sd_radius (any column order, header required).
 */

export interface RadiusRow {
  n: number;
  method: string;
  mean_radius: number;
  sd_radius: number;
}

export const REQUIRED_COLUMNS = ["n", "method", "mean_radius", "sd_radius"] as const;

export class CsvError extends Error {}

export function parseRadiusCsv(text: string, source = "<input>"): RadiusRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${source}: empty file`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  for (const col of REQUIRED_COLUMNS) {
    if (!header.includes(col)) {
      throw new CsvError(`${source}: missing column ${col}`);
    }
  }
  const idx = Object.fromEntries(header.map((h, i) => [h, i]));
  const rows: RadiusRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== header.length) {
      throw new CsvError(
        `${source}:${i + 1}: expected ${header.length} fields, got ${fields.length}`,
      );
    }
    const n = Number(fields[idx["n"]]);
    const mean = Number(fields[idx["mean_radius"]]);
    const sd = Number(fields[idx["sd_radius"]]);
    if (!Number.isFinite(n) || !Number.isFinite(mean) || !Number.isFinite(sd)) {
      throw new CsvError(`${source}:${i + 1}: non-numeric value`);
    }
    rows.push({ n, method: fields[idx["method"]].trim(), mean_radius: mean, sd_radius: sd });
  }
  if (rows.length === 0) {
    throw new CsvError(`${source}: no data rows`);
  }
  return rows;
}
