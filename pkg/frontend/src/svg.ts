import { FigureSpec, Series } from './figure.js';

/** Deterministic SVG line chart: same (series, spec) in, same bytes out. */

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 40, right: 24, bottom: 52, left: 76 };

const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e',
  '#8c564b', '#e377c2', '#7f7f7f'];

const fmt = (v: number): string => {
  if (!Number.isFinite(v)) return '0';
  const s = v.toFixed(2);
  return s === '-0.00' ? '0.00' : s;
};

const fmtTick = (v: number): string => {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e5 || a < 1e-3)) return v.toExponential(0).replace('+', '');
  return Number(v.toPrecision(6)).toString();
};

interface Scale {
  (v: number): number;
  ticks: number[];
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const ticks = niceTicks(lo, hi);
  lo = Math.min(lo, ticks[0]);
  hi = Math.max(hi, ticks[ticks.length - 1]);
  const f = ((v: number) => outLo + ((v - lo) / (hi - lo)) * (outHi - outLo)) as Scale;
  f.ticks = ticks;
  return f;
}

function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  let llo = Math.log10(lo);
  let lhi = Math.log10(hi);
  if (llo === lhi) {
    llo -= 1;
    lhi += 1;
  }
  const ticks: number[] = [];
  for (let e = Math.floor(llo); e <= Math.ceil(lhi); e += 1) ticks.push(10 ** e);
  llo = Math.min(llo, Math.log10(ticks[0]));
  lhi = Math.max(lhi, Math.log10(ticks[ticks.length - 1]));
  const f = ((v: number) =>
    outLo + ((Math.log10(v) - llo) / (lhi - llo)) * (outHi - outLo)) as Scale;
  f.ticks = ticks;
  return f;
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  const step0 = span / Math.max(count - 1, 1);
  const mag = 10 ** Math.floor(Math.log10(step0));
  const norm = step0 / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const start = Math.floor(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step / 2; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function renderSvg(series: Series[], spec: FigureSpec): string {
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const los = series.flatMap((s) => s.points.map((p) => p.y - p.band));
  const his = series.flatMap((s) => s.points.map((p) => p.y + p.band));
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const sx = spec.logx
    ? logScale(Math.min(...xs), Math.max(...xs), x0, x1)
    : linearScale(Math.min(...xs), Math.max(...xs), x0, x1);
  const sy = linearScale(Math.min(...los), Math.max(...his), y0, y1);

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`);
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of sy.ticks) {
    const y = fmt(sy(t));
    parts.push(`<line x1="${x0}" y1="${y}" x2="${x1}" y2="${y}" stroke="#dddddd" stroke-width="1"/>`);
    parts.push(`<text x="${x0 - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="12">${fmtTick(t)}</text>`);
  }
  for (const t of sx.ticks) {
    const x = fmt(sx(t));
    parts.push(`<line x1="${x}" y1="${y0}" x2="${x}" y2="${y0 + 5}" stroke="#333333" stroke-width="1"/>`);
    parts.push(`<text x="${x}" y="${y0 + 20}" text-anchor="middle" font-size="12">${fmtTick(t)}</text>`);
  }
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333333" stroke-width="1"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333333" stroke-width="1"/>`);
  parts.push(`<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="14">${escapeXml(spec.x)}</text>`);
  parts.push(`<text x="18" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="14" transform="rotate(-90 18 ${(y0 + y1) / 2})">${escapeXml(spec.y.join(', '))}</text>`);
  if (spec.title) {
    parts.push(`<text x="${(x0 + x1) / 2}" y="24" text-anchor="middle" font-size="15">${escapeXml(spec.title)}</text>`);
  }

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (s.points.some((p) => p.band > 0) && s.points.length > 1) {
      const upper = s.points.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y + p.band))}`);
      const lower = [...s.points].reverse()
        .map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y - p.band))}`);
      parts.push(`<polygon points="${[...upper, ...lower].join(' ')}" fill="${color}" fill-opacity="0.15" stroke="none"/>`);
    }
    if (s.points.length === 1) {
      const p = s.points[0];
      parts.push(`<circle cx="${fmt(sx(p.x))}" cy="${fmt(sy(p.y))}" r="4" fill="${color}"/>`);
    } else {
      const pts = s.points.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`).join(' ');
      parts.push(`<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="2"/>`);
    }
  });

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const ly = y1 + 8 + i * 18;
    parts.push(`<line x1="${x0 + 10}" y1="${ly}" x2="${x0 + 34}" y2="${ly}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${x0 + 40}" y="${ly}" dominant-baseline="middle" font-size="12">${escapeXml(s.label)}</text>`);
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}

function escapeXml(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}
