import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import type { FetchLike } from '../src/api.js';
import { PlanController } from '../src/controller.js';
import { formatValue } from '../src/format.js';
import type { GoalVector, SolveResponse } from '../src/types.js';
import { renderErrors, renderGoalBars, renderObjective } from '../src/view.js';
import { workedDocument } from './fixtures.js';

const GV: GoalVector = {
  total_cost: 190,
  cross_site_volume: 0,
  skill_risk: 0,
  load_imbalance: 0,
};

const SOLVE_RESPONSE: SolveResponse = {
  assignment: { T1: 'B', T2: 'B', T3: 'B' },
  objective: 190,
  goal_vector: GV,
  execution_costs: { T1: 80, T2: 70, T3: 40 },
  edge_costs: [],
  solver: 'dp',
  statistics: {},
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

function clientWith(fetchFn: FetchLike): ApiClient {
  return new ApiClient('http://service.test', fetchFn);
}

describe('solve flow', () => {
  it('stores the response board and displays service numbers verbatim', async () => {
    const controller = new PlanController(
      clientWith(async () => jsonResponse(SOLVE_RESPONSE)),
    );
    controller.importDocument(workedDocument());
    const board = await controller.solve();
    expect(board?.assignment).toEqual(SOLVE_RESPONSE.assignment);
    expect(controller.displayedObjective()).toBe(formatValue(SOLVE_RESPONSE.objective));
    expect(controller.displayedGoalVector().total_cost).toBe(formatValue(GV.total_cost));
    expect(renderObjective(controller)).toContain('190.0000');
    expect(renderGoalBars(controller)).toContain('190.0000');
  });

  it('sends the exported draft, not the original document', async () => {
    const bodies: unknown[] = [];
    const controller = new PlanController(
      clientWith(async (_url, init) => {
        bodies.push(JSON.parse(init!.body as string));
        return jsonResponse(SOLVE_RESPONSE);
      }),
    );
    controller.importDocument(workedDocument());
    controller.draft!.toggleForbid('T3', 'B');
    await controller.solve();
    const sent = bodies[0] as { scenario: { tasks: { id: string; forbidden_sites?: string[] }[] } };
    expect(sent.scenario.tasks.find((t) => t.id === 'T3')?.forbidden_sites).toEqual(['B']);
  });

  it('passes solver options through', async () => {
    const bodies: unknown[] = [];
    const controller = new PlanController(
      clientWith(async (_url, init) => {
        bodies.push(JSON.parse(init!.body as string));
        return jsonResponse(SOLVE_RESPONSE);
      }),
    );
    controller.importDocument(workedDocument());
    await controller.solve({ weights: { cross_site_volume: 1 } });
    expect((bodies[0] as { options: unknown }).options).toEqual({
      weights: { cross_site_volume: 1 },
    });
  });
});

describe('single in-flight request', () => {
  it('refuses a second action while one is pending', async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    let calls = 0;
    const controller = new PlanController(
      clientWith(async () => {
        calls++;
        await gate;
        return jsonResponse(SOLVE_RESPONSE);
      }),
    );
    controller.importDocument(workedDocument());
    const first = controller.solve();
    expect(controller.busy).toBe(true);
    const second = await controller.solve(); // refused, no request made
    expect(second).toBeNull();
    release();
    expect(await first).not.toBeNull();
    expect(controller.busy).toBe(false);
    expect(calls).toBe(1);
  });
});

describe('failure visibility', () => {
  it('renders structured 4xx reasons and never shows stale numbers as fresh', async () => {
    const controller = new PlanController(
      clientWith(async () =>
        jsonResponse({ errors: [{ message: 'site_relations not symmetric at (A,B)' }] }, 400),
      ),
    );
    controller.importDocument(workedDocument());
    const board = await controller.solve();
    expect(board).toBeNull();
    expect(controller.lastError?.status).toBe(400);
    expect(renderErrors(controller)).toContain('not symmetric');
  });

  it('guard errors suggest shrinking the instance', async () => {
    const controller = new PlanController(
      clientWith(async () =>
        jsonResponse({ errors: [{ message: 'enumeration guard exceeded' }] }, 422),
      ),
    );
    controller.importDocument(workedDocument());
    await controller.solve();
    expect(renderErrors(controller)).toContain('fewer tasks or sites');
  });

  it('a dead service fails visibly, never silently computes', async () => {
    const controller = new PlanController(
      clientWith(async () => {
        throw new TypeError('fetch failed');
      }),
    );
    controller.importDocument(workedDocument());
    const board = await controller.solve();
    expect(board).toBeNull();
    expect(controller.board).toBeNull();
    expect(controller.displayedObjective()).toBe('—');
    expect(controller.lastError?.messages).toEqual(['fetch failed']);
  });
});

describe('snapshot comparison', () => {
  it('diffs two result snapshots per goal component', async () => {
    const responses = [
      SOLVE_RESPONSE,
      { ...SOLVE_RESPONSE, objective: 210, goal_vector: { ...GV, total_cost: 210 } },
    ];
    let i = 0;
    const controller = new PlanController(clientWith(async () => jsonResponse(responses[i++])));
    controller.importDocument(workedDocument());
    await controller.solve();
    controller.saveResultSnapshot('A');
    await controller.solve();
    controller.saveResultSnapshot('B');
    const diff = controller.compareSnapshots('A', 'B');
    expect(diff.find((d) => d.goal === 'total_cost')).toEqual({
      goal: 'total_cost',
      left: 190,
      right: 210,
      delta: 20,
    });
    expect(diff.filter((d) => d.delta !== 0)).toHaveLength(1);
  });
});
