import { readFileSync } from 'fs';
import Papa from 'papaparse';

/** One aggregate-CSV row; numeric cells parsed, blanks kept as null. */
export type Row = Record<string, string | number | null>;

export interface Table {
  columns: string[];
  rows: Row[];
}

export class MissingColumnError extends Error {
  constructor(column: string, columns: string[]) {
    super(`column "${column}" not in CSV header (${columns.join(', ')})`);
  }
}

export function parseCsv(text: string): Table {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  const rows: Row[] = parsed.data.map((raw) => {
    const row: Row = {};
    for (const col of columns) {
      const cell = raw[col] ?? '';
      if (cell === '') {
        row[col] = null;
      } else {
        const num = Number(cell);
        row[col] = Number.isNaN(num) ? cell : num;
      }
    }
    return row;
  });
  return { columns, rows };
}

export function loadCsv(path: string): Table {
  return parseCsv(readFileSync(path, 'utf-8'));
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const col of needed) {
    if (!table.columns.includes(col)) {
      throw new MissingColumnError(col, table.columns);
    }
  }
}
