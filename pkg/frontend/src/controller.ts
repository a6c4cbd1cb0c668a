/** Pure what-if controller: all state transitions, no DOM.
 *
 * Contracts:
 *  - every displayed number originates from a service response; the
 *    controller never computes an objective or goal value itself
 *  - at most one request in flight; actions started while busy are refused
 *  - service failures surface as structured error state, never as silently
 *    stale or locally computed results
 */

import type { ApiClient } from './api.js';
import { ApiError } from './api.js';
import { ScenarioDraft } from './draft.js';
import type { GoalPair } from './draft.js';
import { formatValue } from './format.js';
import type {
  Assignment,
  GoalName,
  GoalVector,
  ParetoMember,
  ScenarioDoc,
  SolveOptions,
} from './types.js';
import { GOAL_NAMES } from './types.js';

export interface Board {
  assignment: Assignment;
  goalVector: GoalVector;
  /** absent for Pareto members, which carry no scalarized objective */
  objective?: number;
  source: 'solve' | 'pareto' | 'evaluate';
}

export interface ResultSnapshot {
  name: string;
  goalVector: GoalVector;
}

export interface GoalDiff {
  goal: GoalName;
  left: number;
  right: number;
  delta: number;
}

export class PlanController {
  draft: ScenarioDraft | null = null;
  board: Board | null = null;
  frontier: ParetoMember[] = [];
  busy = false;
  lastError: { status?: number; messages: string[] } | null = null;

  private resultSnapshots: ResultSnapshot[] = [];

  constructor(private readonly client: ApiClient) {}

  importDocument(doc: ScenarioDoc): void {
    this.draft = ScenarioDraft.fromDocument(doc);
    this.board = null;
    this.frontier = [];
    this.lastError = null;
  }

  exportDocument(): ScenarioDoc {
    if (!this.draft) throw new Error('no scenario loaded');
    return this.draft.toDocument();
  }

  /** Run fn with the in-flight guard; returns null if refused (busy). */
  private async guarded<T>(fn: () => Promise<T>): Promise<T | null> {
    if (this.busy) return null;
    if (!this.draft) throw new Error('no scenario loaded');
    this.busy = true;
    this.lastError = null;
    try {
      return await fn();
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = {
          status: err.status,
          messages: err.errors.length ? err.errors.map((e) => e.message) : [err.message],
        };
      } else {
        this.lastError = { messages: [err instanceof Error ? err.message : String(err)] };
      }
      return null;
    } finally {
      this.busy = false;
    }
  }

  async solve(options?: SolveOptions): Promise<Board | null> {
    return this.guarded(async () => {
      const resp = await this.client.solve(this.exportDocument(), options);
      this.board = {
        assignment: resp.assignment,
        goalVector: resp.goal_vector,
        objective: resp.objective,
        source: 'solve',
      };
      return this.board;
    });
  }

  async evaluate(assignment: Assignment): Promise<Board | null> {
    return this.guarded(async () => {
      const resp = await this.client.evaluate(this.exportDocument(), assignment);
      this.board = {
        assignment: resp.assignment,
        goalVector: resp.goal_vector,
        source: 'evaluate',
      };
      return this.board;
    });
  }

  async loadFrontier(): Promise<ParetoMember[] | null> {
    return this.guarded(async () => {
      const resp = await this.client.pareto(this.exportDocument());
      this.frontier = resp.frontier;
      return this.frontier;
    });
  }

  /** Click-to-load: show the clicked frontier member exactly as returned. */
  selectParetoPoint(index: number): Board {
    const member = this.frontier[index];
    if (!member) throw new Error(`no frontier point at index ${index}`);
    this.board = {
      assignment: member.assignment,
      goalVector: member.goal_vector,
      source: 'pareto',
    };
    return this.board;
  }

  setGoalPair(pair: GoalPair): void {
    if (!this.draft) throw new Error('no scenario loaded');
    this.draft.selectedGoalPair = pair;
  }

  // --- display strings (service values only, fixed precision) --------------

  displayedObjective(): string {
    if (!this.board || this.board.objective === undefined) return '—';
    return formatValue(this.board.objective);
  }

  displayedGoalVector(): Record<GoalName, string> {
    const out = {} as Record<GoalName, string>;
    for (const goal of GOAL_NAMES) {
      out[goal] = this.board ? formatValue(this.board.goalVector[goal]) : '—';
    }
    return out;
  }

  // --- snapshot compare -----------------------------------------------------

  saveResultSnapshot(name: string): void {
    if (!this.board) throw new Error('nothing to snapshot');
    this.resultSnapshots = this.resultSnapshots.filter((s) => s.name !== name);
    this.resultSnapshots.push({ name, goalVector: { ...this.board.goalVector } });
    if (this.resultSnapshots.length > 10) this.resultSnapshots.shift();
  }

  compareSnapshots(left: string, right: string): GoalDiff[] {
    const a = this.resultSnapshots.find((s) => s.name === left);
    const b = this.resultSnapshots.find((s) => s.name === right);
    if (!a || !b) throw new Error('unknown snapshot name');
    return GOAL_NAMES.map((goal) => ({
      goal,
      left: a.goalVector[goal],
      right: b.goalVector[goal],
      delta: b.goalVector[goal] - a.goalVector[goal],
    }));
  }
}
