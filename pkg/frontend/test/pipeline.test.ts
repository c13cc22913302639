/** End-to-end figure pipeline: drive the simulator CLI to produce its
 * aggregate CSVs, render the two headline figure styles, and check that the
 * policy curves are ordered the way the underlying columns say (no pixel
 * comparisons).
 */

import { execFileSync } from 'child_process';
import { existsSync, mkdtempSync, readFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { fileURLToPath } from 'url';
import { beforeAll, describe, expect, it } from 'vitest';
import { loadCsv, Table } from '../src/csv.js';
import { extractSeries } from '../src/figure.js';
import { render } from '../src/plot.js';

const REPO = join(fileURLToPath(new URL('.', import.meta.url)), '..', '..');

let outRoot: string;
let framesCsv: string;
let sweepCsv: string;

function runPreset(preset: string, outdir: string): string {
  execFileSync('edgehost', ['run', join(REPO, 'presets', `${preset}.json`),
    '--outdir', outdir], { stdio: 'pipe' });
  return join(outdir, `${preset}_aggregate.csv`);
}

function column(table: Table, policy: string, x: string, y: string): Array<[number, number]> {
  return table.rows
    .filter((r) => r.policy === policy)
    .map((r) => [r[x] as number, r[y] as number] as [number, number])
    .sort((a, b) => a[0] - b[0]);
}

beforeAll(() => {
  outRoot = mkdtempSync(join(tmpdir(), 'edgehost-figs-'));
  framesCsv = runPreset('frames_adversarial', join(outRoot, 'frames'));
  sweepCsv = runPreset('stochastic_fetch_sweep', join(outRoot, 'sweep'));
}, 120_000);

describe('regret-vs-horizon figure (adversarial frames)', () => {
  it('renders and shows retro-renting growing linearly above the others', () => {
    const out = join(outRoot, 'regret_vs_T.svg');
    render(framesCsv, { x: 'T', y: ['mean_regret_adv'] }, out);
    expect(existsSync(out)).toBe(true);
    const svg = readFileSync(out, 'utf-8');
    expect(svg.match(/<polyline /g)).toHaveLength(3);
    for (const label of ['alpha-rr', 'ftpl', 'wftpl']) {
      expect(svg).toContain(`>${label}</text>`);
    }

    const table = loadCsv(framesCsv);
    const rr = column(table, 'alpha-rr', 'T', 'mean_regret_adv');
    // straight-line fit: retro-renting pays a fixed premium per frame
    const n = rr.length;
    const mx = rr.reduce((a, p) => a + p[0], 0) / n;
    const my = rr.reduce((a, p) => a + p[1], 0) / n;
    const sxy = rr.reduce((a, p) => a + (p[0] - mx) * (p[1] - my), 0);
    const sxx = rr.reduce((a, p) => a + (p[0] - mx) ** 2, 0);
    const slope = sxy / sxx;
    const ssRes = rr.reduce(
      (a, p) => a + (p[1] - (my + slope * (p[0] - mx))) ** 2, 0);
    const ssTot = rr.reduce((a, p) => a + (p[1] - my) ** 2, 0);
    expect(slope).toBeGreaterThan(0);
    expect(1 - ssRes / ssTot).toBeGreaterThan(0.95);

    const tEnd = rr[n - 1][0];
    const rrEnd = rr[n - 1][1];
    for (const policy of ['ftpl', 'wftpl']) {
      const pts = column(table, policy, 'T', 'mean_regret_adv');
      expect(pts[pts.length - 1][0]).toBe(tEnd);
      expect(pts[pts.length - 1][1]).toBeLessThan(0.2 * rrEnd);
    }
  });
});

describe('regret-vs-fetch-cost figure (Bernoulli arrivals)', () => {
  it('renders on a log axis with perturbed-leader regret rising and the wait variant near-flat', () => {
    const out = join(outRoot, 'regret_vs_M.svg');
    render(sweepCsv, { x: 'M', y: ['mean_regret_stoch'], logx: true }, out);
    const svg = readFileSync(out, 'utf-8');
    expect(svg.match(/<polyline /g)).toHaveLength(3);
    expect(svg).toContain('>10000</text>');

    const table = loadCsv(sweepCsv);
    const ftpl = new Map(column(table, 'ftpl', 'M', 'mean_regret_stoch'));
    const wftpl = new Map(column(table, 'wftpl', 'M', 'mean_regret_stoch'));
    // the fetch-agnostic policy pays ~linearly in M...
    expect(ftpl.get(10000)! / ftpl.get(100)!).toBeGreaterThan(2);
    const xs = [...ftpl.keys()].sort((a, b) => a - b);
    for (let i = 1; i < xs.length; i += 1) {
      expect(ftpl.get(xs[i])!).toBeGreaterThan(ftpl.get(xs[i - 1])!);
    }
    // ...the waiting variant's growth stays inside the log-factor cap
    expect(wftpl.get(10000)! / wftpl.get(100)!)
      .toBeLessThan(2 * (Math.log(1e4) / Math.log(1e2)));
    // and it separates further from plain perturbed-leader as M grows
    const ratios = xs.map((m) => wftpl.get(m)! / ftpl.get(m)!);
    for (let i = 1; i < ratios.length; i += 1) {
      expect(ratios[i]).toBeLessThan(ratios[i - 1]);
    }
  });
});

describe('plot CLI', () => {
  it('writes a figure for a single-policy single-row selection', () => {
    const out = join(outRoot, 'single.svg');
    render(sweepCsv, {
      x: 'M', y: ['mean_cost'], policies: ['alpha-rr'], logx: false,
    }, out);
    const svg = readFileSync(out, 'utf-8');
    expect(svg).toContain('<polyline');
  });

  it('re-rendering produces identical bytes', () => {
    const a = join(outRoot, 'rep_a.svg');
    const b = join(outRoot, 'rep_b.svg');
    render(framesCsv, { x: 'T', y: ['mean_cost'] }, a);
    render(framesCsv, { x: 'T', y: ['mean_cost'] }, b);
    expect(readFileSync(a, 'utf-8')).toBe(readFileSync(b, 'utf-8'));
  });

  it('fails cleanly on a missing column', () => {
    expect(() => render(sweepCsv, { x: 'T', y: ['no_such_column'] },
      join(outRoot, 'nope.svg'))).toThrow(/no_such_column/);
  });
});
