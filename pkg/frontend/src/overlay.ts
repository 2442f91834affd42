/**
 * Overlay geometry: turn trajectories into SVG path strings in canvas
 * coordinates. The stroke is drawn white, the current program red, and
 * candidate trajectories blue, echoing the usual sketch-completion
 * presentation. Pure functions so they are testable without a DOM.
 */

import type { Point } from "./stroke.js";

export const STROKE_COLOR = "#ffffff";
export const PROGRAM_COLOR = "#e4572e";
export const CANDIDATE_COLOR = "#4f9dde";

export interface ViewTransform {
  offsetX: number;
  offsetY: number;
  scale: number;
}

/** Fit all layers into a width x height viewport with a margin. */
export function fitView(
  layers: Point[][],
  width: number,
  height: number,
  margin = 20,
): ViewTransform {
  const pts = layers.flat();
  if (pts.length === 0) return { offsetX: width / 2, offsetY: height / 2, scale: 1 };
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const minX = Math.min(...xs), maxX = Math.max(...xs);
  const minY = Math.min(...ys), maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min(
    (width - 2 * margin) / spanX,
    (height - 2 * margin) / spanY,
  );
  return {
    offsetX: margin - minX * scale + (width - 2 * margin - spanX * scale) / 2,
    offsetY: height - margin + minY * scale - (height - 2 * margin - spanY * scale) / 2,
    scale,
  };
}

/** Turtle coordinates (y up) to canvas coordinates (y down) under a view. */
export function toCanvas(p: Point, view: ViewTransform): Point {
  return [view.offsetX + p[0] * view.scale, view.offsetY - p[1] * view.scale];
}

export function pathOf(points: Point[], view: ViewTransform): string {
  if (points.length === 0) return "";
  const cmds = points.map((p, i) => {
    const [x, y] = toCanvas(p, view);
    return `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`;
  });
  return cmds.join(" ");
}
