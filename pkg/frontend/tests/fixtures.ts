import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';

import type { ScenarioDoc } from '../src/types.js';

const WORKED_PATH = fileURLToPath(
  new URL('../../scenarios/worked_chain.json', import.meta.url),
);

export function workedDocument(): ScenarioDoc {
  return JSON.parse(readFileSync(WORKED_PATH, 'utf-8')) as ScenarioDoc;
}
