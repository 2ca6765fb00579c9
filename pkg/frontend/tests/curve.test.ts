import { describe, expect, it } from "vitest";

import { renderCurve } from "../src/curve.js";
import type { Knot } from "../src/types.js";

function circleXs(svg: string): number[] {
  return [...svg.matchAll(/<circle cx="([\d.]+)"/g)].map((m) => Number(m[1]));
}

describe("renderCurve", () => {
  it("shows a placeholder when there are no knots yet", () => {
    const svg = renderCurve([]);
    expect(svg).toContain("<svg");
    expect(svg.endsWith("</svg>")).toBe(true);
    expect(svg).toContain("No curve yet");
    expect(svg).not.toContain("<circle");
  });

  it("draws one knot dot per knot and a connecting line", () => {
    const knots: Knot[] = [[0, 0], [0.25, 0.0625], [0.5, 0.25], [1, 1]];
    const svg = renderCurve(knots);
    expect(circleXs(svg)).toHaveLength(4);
    expect(svg).toContain("<polyline");
  });

  it("maps increasing params to strictly increasing x positions", () => {
    const knots: Knot[] = [[0, 0], [0.2, 0.3], [0.7, 0.8], [1, 1]];
    const xs = circleXs(renderCurve(knots));
    for (let i = 1; i < xs.length; i++) {
      expect(xs[i]!).toBeGreaterThan(xs[i - 1]!);
    }
  });

  it("keeps every point inside the viewport", () => {
    const knots: Knot[] = [[-3, -1.5], [0, 0], [7, 2.25]];
    const svg = renderCurve(knots, { width: 400, height: 200, margin: 20 });
    const xs = circleXs(svg);
    const ys = [...svg.matchAll(/cy="([\d.-]+)"/g)].map((m) => Number(m[1]));
    for (const x of xs) {
      expect(x).toBeGreaterThanOrEqual(20);
      expect(x).toBeLessThanOrEqual(380);
    }
    for (const y of ys) {
      expect(y).toBeGreaterThanOrEqual(20);
      expect(y).toBeLessThanOrEqual(180);
    }
    expect(svg).not.toContain("NaN");
  });

  it("handles a single knot without dividing by zero", () => {
    const svg = renderCurve([[0.5, 0.5]]);
    expect(circleXs(svg)).toHaveLength(1);
    expect(svg).not.toContain("<polyline");
    expect(svg).not.toContain("NaN");
  });

  it("labels the axis extremes with the data range", () => {
    const svg = renderCurve([[0, 0], [100, 1]]);
    expect(svg).toContain(">0<");
    expect(svg).toContain(">100<");
    expect(svg).toContain(">1<");
  });
});
