/** Thin presentation layer: pure functions from controller state to HTML
 * strings. Kept free of document/window so it is unit-testable in node;
 * main.ts does the actual wiring. */

import type { Board, GoalDiff, PlanController } from './controller.js';
import { formatValue } from './format.js';
import type { ScenarioDraft } from './draft.js';
import { GOAL_NAMES } from './types.js';

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

const SITE_PALETTE = ['#4e79a7', '#f28e2b', '#59a14f', '#e15759', '#b07aa1', '#76b7b2'];

export function siteColor(siteIds: string[], siteId: string): string {
  const i = siteIds.indexOf(siteId);
  return SITE_PALETTE[((i % SITE_PALETTE.length) + SITE_PALETTE.length) % SITE_PALETTE.length]!;
}

/** Result board: tasks colored by assigned site. */
export function renderBoard(board: Board, siteIds: string[]): string {
  const cells = Object.entries(board.assignment)
    .map(
      ([task, site]) =>
        `<span class="cell" data-task="${esc(task)}" data-site="${esc(site)}" ` +
        `style="background:${siteColor(siteIds, site)}">${esc(task)}→${esc(site)}</span>`,
    )
    .join('');
  return `<div class="board" data-source="${board.source}">${cells}</div>`;
}

/** Horizontal bars, one per goal component, scaled to the largest value. */
export function renderGoalBars(controller: PlanController): string {
  const board = controller.board;
  const displayed = controller.displayedGoalVector();
  const max = board ? Math.max(...GOAL_NAMES.map((g) => board.goalVector[g]), 1e-9) : 1;
  const rows = GOAL_NAMES.map((goal) => {
    const width = board ? (100 * board.goalVector[goal]) / max : 0;
    return (
      `<div class="goal-row"><span class="goal-name">${goal}</span>` +
      `<span class="goal-bar" style="width:${width.toFixed(1)}%"></span>` +
      `<span class="goal-value">${displayed[goal]}</span></div>`
    );
  });
  return `<div class="goal-bars">${rows.join('')}</div>`;
}

export function renderObjective(controller: PlanController): string {
  return `<div class="objective">objective: <strong>${controller.displayedObjective()}</strong></div>`;
}

export function renderErrors(controller: PlanController): string {
  if (!controller.lastError) return '';
  const items = controller.lastError.messages.map((m) => `<li>${esc(m)}</li>`).join('');
  const hint =
    controller.lastError.status === 422 &&
    controller.lastError.messages.some((m) => m.includes('guard'))
      ? '<p class="hint">Try fewer tasks or sites.</p>'
      : '';
  return `<div class="errors" role="alert"><ul>${items}</ul>${hint}</div>`;
}

export function renderSnapshotDiff(diffs: GoalDiff[]): string {
  const rows = diffs
    .map((d) => {
      const cls = d.delta === 0 ? 'same' : d.delta < 0 ? 'better' : 'worse';
      return (
        `<tr class="${cls}"><td>${d.goal}</td><td>${formatValue(d.left)}</td>` +
        `<td>${formatValue(d.right)}</td><td>${formatValue(d.delta)}</td></tr>`
      );
    })
    .join('');
  return `<table class="snapshot-diff"><tr><th>goal</th><th>A</th><th>B</th><th>Δ</th></tr>${rows}</table>`;
}

/** Editable matrix of pin/forbid toggles per (task, site) cell. */
export function renderConstraintMatrix(draft: ScenarioDraft): string {
  const header = draft.sites.map((s) => `<th>${esc(s.id)}</th>`).join('');
  const rows = draft.tasks
    .map((t) => {
      const cells = draft.sites
        .map((s) => {
          const state = draft.isPinned(t.id, s.id)
            ? 'pinned'
            : draft.isForbidden(t.id, s.id)
              ? 'forbidden'
              : 'free';
          return (
            `<td class="${state}" data-task="${esc(t.id)}" data-site="${esc(s.id)}">` +
            `${state === 'pinned' ? '📌' : state === 'forbidden' ? '✕' : ''}</td>`
          );
        })
        .join('');
      return `<tr><th>${esc(t.id)}</th>${cells}</tr>`;
    })
    .join('');
  return `<table class="constraints"><tr><th></th>${header}</tr>${rows}</table>`;
}
