/** End-to-end loop against the real Python service: import the worked
 * 3-task/2-site scenario, forbid (T3, B), re-solve, and check that every
 * displayed number is exactly what the service reports for the constrained
 * scenario. Requires the `distplan` package to be installed (uvicorn is
 * spawned as a child process). */

import { spawn } from 'node:child_process';
import type { ChildProcess } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { PlanController } from '../src/controller.js';
import { formatValue } from '../src/format.js';
import { scatterPoints } from '../src/pareto.js';
import { workedDocument } from './fixtures.js';

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitForHealth(client: ApiClient): Promise<void> {
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const health = await client.health();
      if (health.status === 'ok') return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error('service did not come up in 30s');
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

beforeAll(async () => {
  service = spawn(
    'python3',
    ['-m', 'uvicorn', 'distplan.service:app', '--host', '127.0.0.1', '--port', String(PORT)],
    { stdio: 'ignore' },
  );
  await waitForHealth(new ApiClient(BASE));
});

afterAll(() => {
  service?.kill();
});

describe('what-if loop against the live service', () => {
  it('solves the imported worked scenario to 190, all tasks on B', async () => {
    const controller = new PlanController(new ApiClient(BASE));
    controller.importDocument(workedDocument());
    const board = await controller.solve();
    expect(board?.objective).toBe(190);
    expect(board?.assignment).toEqual({ T1: 'B', T2: 'B', T3: 'B' });
    expect(controller.displayedObjective()).toBe(formatValue(190));
  });

  it('forbidding (T3, B) re-solves to the service-recomputed optimum', async () => {
    const client = new ApiClient(BASE);
    const controller = new PlanController(client);
    controller.importDocument(workedDocument());
    controller.draft!.toggleForbid('T3', 'B');

    const board = await controller.solve();
    expect(board).not.toBeNull();
    expect(board!.assignment['T3']).not.toBe('B');

    // oracle: ask the service directly for the constrained scenario
    const oracle = await client.solve(controller.exportDocument());
    expect(controller.displayedObjective()).toBe(formatValue(oracle.objective));
    expect(board!.assignment).toEqual(oracle.assignment);
    expect(board!.goalVector).toEqual(oracle.goal_vector);
    expect(oracle.objective).toBe(210);
    expect(oracle.assignment).toEqual({ T1: 'A', T2: 'A', T3: 'A' });
  });

  it('Pareto click-to-load reproduces each clicked vector exactly', async () => {
    const client = new ApiClient(BASE);
    const controller = new PlanController(client);
    const doc = workedDocument();
    controller.importDocument(doc);
    const frontier = await controller.loadFrontier();
    expect(frontier).not.toBeNull();
    expect(frontier!.length).toBeGreaterThan(0);

    const points = scatterPoints(frontier!, controller.draft!.selectedGoalPair);
    for (const point of points) {
      const board = controller.selectParetoPoint(point.index);
      // the displayed vector must be bit-identical to a service re-evaluation
      const check = await client.evaluate(doc, board.assignment);
      expect(board.goalVector).toEqual(check.goal_vector);
      expect(point.x).toBe(board.goalVector[controller.draft!.selectedGoalPair[0]]);
      expect(point.y).toBe(board.goalVector[controller.draft!.selectedGoalPair[1]]);
    }
  });

  it('per-goal optimum for cross_site_volume matches a weighted solve', async () => {
    const client = new ApiClient(BASE);
    const goals = await client.goals(workedDocument());
    const entry = goals.goals.find((g) => g.goal === 'cross_site_volume')!;
    const solved = await client.solve(workedDocument(), {
      weights: { cross_site_volume: 1 },
    });
    expect(solved.goal_vector.cross_site_volume).toBe(
      entry.report.goal_vector.cross_site_volume,
    );
    expect(entry.report.goal_vector.cross_site_volume).toBe(0);
  });

  it('export stays byte-compatible: service accepts a toggled round-trip', async () => {
    const client = new ApiClient(BASE);
    const controller = new PlanController(client);
    controller.importDocument(workedDocument());
    controller.draft!.togglePin('T2', 'A');
    controller.draft!.toggleForbid('T1', 'B');
    const exported = JSON.parse(JSON.stringify(controller.exportDocument()));
    const resp = await client.solve(exported);
    expect(resp.assignment['T2']).toBe('A');
    expect(resp.assignment['T1']).not.toBe('B');
  });
});
