import { requireColumns, Table } from './csv.js';

/** What to draw: which columns against which, for which policies. */
export interface FigureSpec {
  x: string;                 // sweep column: T | M | c
  y: string[];               // one or more mean_* columns
  policies?: string[];       // subset filter; default: every policy in the file
  logx?: boolean;
  title?: string;
}

export interface Point {
  x: number;
  y: number;
  band: number;              // half-width of the error band (0 when unknown)
}

export interface Series {
  label: string;
  points: Point[];           // sorted by x
}

/** The aggregate file carries one standard-error column; regret columns are
 * cost shifted by a per-sweep-point constant, so it bands those too. */
const BAND_COLUMN = 'se_cost';

export function extractSeries(table: Table, spec: FigureSpec): Series[] {
  requireColumns(table, [spec.x, ...spec.y, 'policy']);
  const policies = spec.policies ?? uniquePolicies(table);
  const missing = policies.filter(
    (p) => !table.rows.some((r) => r.policy === p),
  );
  if (missing.length > 0) {
    throw new Error(`no rows for policies: ${missing.join(', ')}`);
  }
  const hasBand = table.columns.includes(BAND_COLUMN);
  const series: Series[] = [];
  for (const policy of policies) {
    for (const ycol of spec.y) {
      const points: Point[] = [];
      for (const row of table.rows) {
        if (row.policy !== policy) continue;
        const x = row[spec.x];
        const y = row[ycol];
        if (typeof x !== 'number' || typeof y !== 'number') continue;
        const band = hasBand && typeof row[BAND_COLUMN] === 'number'
          ? (row[BAND_COLUMN] as number)
          : 0;
        points.push({ x, y, band });
      }
      points.sort((a, b) => a.x - b.x);
      if (points.length > 0) {
        series.push({
          label: spec.y.length > 1 ? `${policy} ${ycol}` : policy,
          points,
        });
      }
    }
  }
  if (series.length === 0) {
    throw new Error(
      `nothing to plot: no numeric (${spec.x}, ${spec.y.join('/')}) pairs selected`,
    );
  }
  if (spec.logx) {
    for (const s of series) {
      if (s.points.some((p) => p.x <= 0)) {
        throw new Error(`log x-axis needs positive ${spec.x} values`);
      }
    }
  }
  return series;
}

export function uniquePolicies(table: Table): string[] {
  const seen: string[] = [];
  for (const row of table.rows) {
    const p = row.policy;
    if (typeof p === 'string' && !seen.includes(p)) seen.push(p);
  }
  return seen;
}
