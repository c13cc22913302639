import { describe, expect, it } from 'vitest';
import { MissingColumnError, parseCsv, requireColumns } from '../src/csv.js';

const SAMPLE = [
  'experiment,policy,T,mean_cost,se_cost,mean_T_s',
  'demo,ftpl,1000,415.5,2.25,',
  'demo,wftpl,1000,401.1,1.75,812',
].join('\n');

describe('parseCsv', () => {
  it('parses numbers and keeps blanks as null', () => {
    const table = parseCsv(SAMPLE);
    expect(table.columns).toEqual(
      ['experiment', 'policy', 'T', 'mean_cost', 'se_cost', 'mean_T_s']);
    expect(table.rows).toHaveLength(2);
    expect(table.rows[0].policy).toBe('ftpl');
    expect(table.rows[0].T).toBe(1000);
    expect(table.rows[0].mean_T_s).toBeNull();
    expect(table.rows[1].mean_T_s).toBe(812);
  });

  it('round-trips 9-significant-digit values exactly', () => {
    const table = parseCsv('policy,x\np,1234.56789\n');
    expect(table.rows[0].x).toBe(1234.56789);
  });
});

describe('requireColumns', () => {
  it('accepts present columns', () => {
    expect(() => requireColumns(parseCsv(SAMPLE), ['policy', 'T'])).not.toThrow();
  });

  it('names the missing column', () => {
    expect(() => requireColumns(parseCsv(SAMPLE), ['mean_regret_adv']))
      .toThrow(MissingColumnError);
    expect(() => requireColumns(parseCsv(SAMPLE), ['mean_regret_adv']))
      .toThrow(/mean_regret_adv/);
  });
});
