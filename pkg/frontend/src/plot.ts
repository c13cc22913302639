#!/usr/bin/env node
/** CLI: render one figure from an aggregate results CSV.
 *
 *   plot --csv results/foo_aggregate.csv --x T --y mean_regret_adv \
 *        [--policies ftpl,wftpl] [--logx] --out figure.svg
 */

import { writeFileSync } from 'fs';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { loadCsv } from './csv.js';
import { extractSeries, FigureSpec } from './figure.js';
import { renderSvg } from './svg.js';

export function render(csvPath: string, spec: FigureSpec, outPath: string): void {
  const table = loadCsv(csvPath);
  const series = extractSeries(table, spec);
  writeFileSync(outPath, renderSvg(series, spec), 'utf-8');
}

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .option('csv', { type: 'string', demandOption: true, describe: 'aggregate CSV path' })
    .option('x', { type: 'string', demandOption: true, describe: 'x-axis column (T | M | c)' })
    .option('y', { type: 'string', demandOption: true, describe: 'y column(s), comma-separated' })
    .option('policies', { type: 'string', describe: 'comma-separated policy filter' })
    .option('logx', { type: 'boolean', default: false })
    .option('out', { type: 'string', demandOption: true, describe: 'output SVG path' })
    .option('title', { type: 'string' })
    .strict()
    .fail((msg) => { throw new Error(msg); })
    .parse();

  const spec: FigureSpec = {
    x: args.x,
    y: args.y.split(',').map((s) => s.trim()).filter(Boolean),
    policies: args.policies?.split(',').map((s) => s.trim()).filter(Boolean),
    logx: args.logx,
    title: args.title,
  };
  render(args.csv, spec, args.out);
  console.log(`wrote ${args.out}`);
  return 0;
}

const entry = process.argv[1] ?? '';
if (entry.endsWith('plot.js') || entry.endsWith('plot.ts')) {
  main(hideBin(process.argv)).catch((err: Error) => {
    console.error(`error: ${err.message}`);
    process.exit(1);
  });
}
