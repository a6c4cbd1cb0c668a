export { ApiClient, ApiError } from './api.js';
export type { FetchLike } from './api.js';
export { PlanController } from './controller.js';
export type { Board, GoalDiff } from './controller.js';
export { ScenarioDraft, HISTORY_CAPACITY } from './draft.js';
export type { GoalPair, Snapshot } from './draft.js';
export { DISPLAY_DECIMALS, formatValue } from './format.js';
export { renderScatterSvg, scatterPoints } from './pareto.js';
export type { ScatterPoint } from './pareto.js';
export * from './types.js';
export {
  renderBoard,
  renderConstraintMatrix,
  renderErrors,
  renderGoalBars,
  renderObjective,
  renderSnapshotDiff,
  siteColor,
} from './view.js';
export { mount } from './main.js';
