/** Wire types mirroring the scenario file format and the service protocol. */

export const GOAL_NAMES = [
  'total_cost',
  'cross_site_volume',
  'skill_risk',
  'load_imbalance',
] as const;

export type GoalName = (typeof GOAL_NAMES)[number];

export type GoalVector = Record<GoalName, number>;

export interface TaskDoc {
  id: string;
  effort: number;
  required_skills?: Record<string, number>;
  pinned_site?: string | null;
  forbidden_sites?: string[];
  attributes?: Record<string, number>;
}

export interface SiteDoc {
  id: string;
  hourly_rate: number;
  skills?: Record<string, number>;
  capacity?: number;
}

export interface EdgeDoc {
  from: string;
  to: string;
  volume: number;
}

export interface RelationDoc {
  a: string;
  b: string;
  cost: number;
}

export interface CostModelDoc {
  skill_gap_penalty?: number;
  hard_skill_floor?: number;
  capacity_mode?: 'soft' | 'hard';
}

export interface ScenarioDoc {
  format_version: number;
  root?: string;
  tasks: TaskDoc[];
  sites: SiteDoc[];
  edges: EdgeDoc[];
  site_relations: RelationDoc[];
  goal_weights?: Partial<Record<GoalName, number>>;
  cost_model?: CostModelDoc;
}

export type Assignment = Record<string, string>;

export interface SolveResponse {
  assignment: Assignment;
  objective: number;
  goal_vector: GoalVector;
  execution_costs: Record<string, number>;
  edge_costs: { from: string; to: string; volume: number; cost: number }[];
  solver: string;
  statistics: Record<string, number>;
}

export interface EvaluateResponse {
  assignment: Assignment;
  goal_vector: GoalVector;
}

export interface GoalsResponse {
  goals: { goal: GoalName; report: SolveResponse }[];
}

export interface ParetoMember {
  assignment: Assignment;
  goal_vector: GoalVector;
}

export interface ParetoResponse {
  frontier: ParetoMember[];
}

export interface ServiceError {
  entity?: string;
  field?: string;
  message: string;
}

export interface SolveOptions {
  solver?: 'auto' | 'dp' | 'brute';
  weights?: Partial<Record<GoalName, number>>;
}
