/**
 * Strict reader for the jtilde-scan CSV contract.
 *
 * The producing pipeline guarantees the exact column set below; anything
 * else is a wiring mistake and must fail loudly rather than plot garbage.
 */

export interface ScanRow {
  r: number;
  oneMinusR: number;
  withIm: number;
  noIm: number;
}

export const SCAN_COLUMNS = ["r", "one_minus_r", "Jtilde_true", "Jtilde_noIm"] as const;

export class ScanCsvError extends Error {
  constructor(source: string, detail: string) {
    super(`${source}: ${detail}`);
    this.name = "ScanCsvError";
  }
}

export function parseScanCsv(text: string, source = "<csv>"): ScanRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new ScanCsvError(source, "file is empty");
  }
  const header = lines[0]!.split(",").map((cell) => cell.trim());
  const expected = SCAN_COLUMNS.join(",");
  if (header.join(",") !== expected) {
    throw new ScanCsvError(source, `header "${header.join(",")}" does not match "${expected}"`);
  }
  if (lines.length === 1) {
    throw new ScanCsvError(source, "no data rows");
  }
  const rows: ScanRow[] = [];
  for (let i = 1; i < lines.length; i += 1) {
    const cells = lines[i]!.split(",");
    if (cells.length !== SCAN_COLUMNS.length) {
      throw new ScanCsvError(source, `row ${i} has ${cells.length} fields, expected ${SCAN_COLUMNS.length}`);
    }
    const values = cells.map((cell) => Number(cell));
    if (values.some((v) => !Number.isFinite(v))) {
      throw new ScanCsvError(source, `row ${i} contains a non-numeric value`);
    }
    rows.push({
      r: values[0]!,
      oneMinusR: values[1]!,
      withIm: values[2]!,
      noIm: values[3]!,
    });
  }
  return rows;
}
