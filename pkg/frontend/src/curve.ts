/**
 * SVG knot plot of a piecewise utility scale.
 *
 * Pure string rendering so it can be unit-tested without a DOM; the
 * UI assigns the result to a container's innerHTML.
 */

import type { Knot } from "./types.js";

export interface CurveOptions {
  width: number;
  height: number;
  margin: number;
}

const DEFAULTS: CurveOptions = { width: 480, height: 280, margin: 32 };

function fmt(x: number): string {
  return Number(x.toFixed(2)).toString();
}

export function renderCurve(knots: Knot[], options?: Partial<CurveOptions>): string {
  const { width, height, margin } = { ...DEFAULTS, ...options };
  const open = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" role="img" aria-label="utility curve">`;
  if (knots.length === 0) {
    return (
      open +
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" class="placeholder">` +
      "No curve yet: answer questions to grow it." +
      "</text></svg>"
    );
  }

  const params = knots.map((k) => k[0]);
  const values = knots.map((k) => k[1]);
  const pLo = Math.min(...params);
  const pHi = Math.max(...params);
  const vLo = Math.min(...values);
  const vHi = Math.max(...values);
  // degenerate spans still deserve a visible dot in the middle
  const pSpan = pHi - pLo || 1;
  const vSpan = vHi - vLo || 1;
  const plotW = width - 2 * margin;
  const plotH = height - 2 * margin;
  const sx = (p: number) => margin + ((p - pLo) / pSpan) * plotW;
  const sy = (v: number) => height - margin - ((v - vLo) / vSpan) * plotH;

  const axes =
    `<line x1="${margin}" y1="${height - margin}" x2="${width - margin}" y2="${height - margin}" class="axis"/>` +
    `<line x1="${margin}" y1="${margin}" x2="${margin}" y2="${height - margin}" class="axis"/>` +
    `<text x="${margin}" y="${height - margin + 16}" class="tick">${fmt(pLo)}</text>` +
    `<text x="${width - margin}" y="${height - margin + 16}" text-anchor="end" class="tick">${fmt(pHi)}</text>` +
    `<text x="${margin - 4}" y="${height - margin}" text-anchor="end" class="tick">${fmt(vLo)}</text>` +
    `<text x="${margin - 4}" y="${margin + 4}" text-anchor="end" class="tick">${fmt(vHi)}</text>`;

  const points = knots.map(([p, v]) => `${sx(p)},${sy(v)}`).join(" ");
  const line =
    knots.length > 1 ? `<polyline points="${points}" fill="none" class="curve"/>` : "";
  const dots = knots
    .map(([p, v]) => `<circle cx="${sx(p)}" cy="${sy(v)}" r="2.5" class="knot"/>`)
    .join("");

  return open + axes + line + dots + "</svg>";
}
