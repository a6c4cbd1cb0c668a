/** Browser entry point: wires the controller to a minimal DOM shell.
 * Everything interesting lives in controller.ts / view.ts; this file only
 * translates events to controller calls and re-renders. */

import { ApiClient } from './api.js';
import { PlanController } from './controller.js';
import { renderScatterSvg, scatterPoints } from './pareto.js';
import {
  renderBoard,
  renderConstraintMatrix,
  renderErrors,
  renderGoalBars,
  renderObjective,
} from './view.js';

export function mount(rootEl: HTMLElement, baseUrl: string): PlanController {
  const controller = new PlanController(new ApiClient(baseUrl));

  rootEl.innerHTML = `
    <div class="toolbar">
      <input type="file" id="import" accept=".json">
      <button id="export">Export</button>
      <button id="solve">Solve</button>
      <button id="pareto">Pareto</button>
    </div>
    <div id="errors"></div>
    <div id="constraints"></div>
    <div id="result"></div>
    <div id="scatter"></div>`;

  const el = (id: string) => rootEl.querySelector(`#${id}`) as HTMLElement;

  const render = () => {
    el('errors').innerHTML = renderErrors(controller);
    el('constraints').innerHTML = controller.draft
      ? renderConstraintMatrix(controller.draft)
      : '';
    el('result').innerHTML = controller.board
      ? renderObjective(controller) +
        renderBoard(controller.board, controller.draft?.sites.map((s) => s.id) ?? []) +
        renderGoalBars(controller)
      : '';
    if (controller.frontier.length && controller.draft) {
      const points = scatterPoints(controller.frontier, controller.draft.selectedGoalPair);
      el('scatter').innerHTML = renderScatterSvg(points, controller.draft.selectedGoalPair);
    } else {
      el('scatter').innerHTML = '';
    }
    rootEl.querySelectorAll('button').forEach((button) => {
      button.disabled = controller.busy;
    });
  };

  el('import').addEventListener('change', async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    controller.importDocument(JSON.parse(await file.text()));
    render();
  });

  el('export').addEventListener('click', () => {
    const blob = new Blob([JSON.stringify(controller.exportDocument(), null, 2)], {
      type: 'application/json',
    });
    const link = document.createElement('a');
    link.href = URL.createObjectURL(blob);
    link.download = 'scenario.json';
    link.click();
    URL.revokeObjectURL(link.href);
  });

  el('solve').addEventListener('click', async () => {
    render();
    await controller.solve();
    render();
  });

  el('pareto').addEventListener('click', async () => {
    render();
    await controller.loadFrontier();
    render();
  });

  el('constraints').addEventListener('click', (event) => {
    const cell = (event.target as HTMLElement).closest('td[data-task]');
    if (!cell || !controller.draft) return;
    const task = cell.getAttribute('data-task')!;
    const site = cell.getAttribute('data-site')!;
    // plain click toggles forbid, shift-click toggles pin
    if ((event as MouseEvent).shiftKey) controller.draft.togglePin(task, site);
    else controller.draft.toggleForbid(task, site);
    render();
  });

  el('scatter').addEventListener('click', (event) => {
    const point = (event.target as HTMLElement).closest('.pareto-point');
    if (!point) return;
    controller.selectParetoPoint(Number(point.getAttribute('data-index')));
    render();
  });

  return controller;
}
