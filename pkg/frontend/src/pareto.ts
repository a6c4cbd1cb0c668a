/** 2-D Pareto scatter over a user-chosen goal pair, rendered as an SVG
 * string. Each point carries its frontier index so a click handler can map
 * back to the exact assignment/vector returned by the service. */

import type { GoalPair } from './draft.js';
import type { ParetoMember } from './types.js';

export interface ScatterPoint {
  index: number;
  x: number;
  y: number;
}

export function scatterPoints(frontier: ParetoMember[], pair: GoalPair): ScatterPoint[] {
  const [gx, gy] = pair;
  return frontier.map((member, index) => ({
    index,
    x: member.goal_vector[gx],
    y: member.goal_vector[gy],
  }));
}

const W = 360;
const H = 240;
const PAD = 32;

function scale(values: number[], lo: number, hi: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const span = max - min || 1;
  return (v) => lo + ((v - min) / span) * (hi - lo);
}

export function renderScatterSvg(points: ScatterPoint[], pair: GoalPair): string {
  const sx = scale(points.map((p) => p.x), PAD, W - PAD);
  // SVG y grows downward; flip so better (smaller) is lower-left
  const sy = scale(points.map((p) => p.y), H - PAD, PAD);
  const circles = points
    .map(
      (p) =>
        `<circle class="pareto-point" data-index="${p.index}" ` +
        `cx="${sx(p.x).toFixed(1)}" cy="${sy(p.y).toFixed(1)}" r="5"/>`,
    )
    .join('');
  return (
    `<svg viewBox="0 0 ${W} ${H}" role="img" aria-label="Pareto frontier">` +
    `<text x="${W / 2}" y="${H - 6}" text-anchor="middle">${pair[0]}</text>` +
    `<text x="10" y="${H / 2}" transform="rotate(-90 10 ${H / 2})" text-anchor="middle">${pair[1]}</text>` +
    circles +
    `</svg>`
  );
}
