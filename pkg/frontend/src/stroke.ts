/**
 * Freehand stroke handling: pointer samples come in at device rate and are
 * downsampled so consecutive points sit at least MIN_GAP canvas units
 * apart, then registered so the stroke starts at the turtle origin --
 * the same rule the engine applies to corpus trajectories, so the user
 * sees exactly what the engine sees.
 */

export type Point = [number, number];

export const MIN_GAP = 2;

/** Keep the first sample and every later sample >= MIN_GAP from the last kept one. */
export function downsample(points: Point[], minGap: number = MIN_GAP): Point[] {
  if (points.length === 0) return [];
  const kept: Point[] = [points[0]];
  for (const p of points.slice(1)) {
    const last = kept[kept.length - 1];
    if (Math.hypot(p[0] - last[0], p[1] - last[1]) >= minGap) {
      kept.push(p);
    }
  }
  return kept;
}

/** Translate the stroke so its first point is (0, 0). */
export function registerToOrigin(points: Point[]): Point[] {
  if (points.length === 0) return [];
  const [x0, y0] = points[0];
  return points.map(([x, y]) => [x - x0, y - y0]);
}

/** Canvas y grows downward; the turtle's y grows upward (north). */
export function canvasToTurtle(points: Point[]): Point[] {
  return points.map(([x, y]) => [x, -y]);
}

export function prepareStroke(raw: Point[], minGap: number = MIN_GAP): Point[] {
  return registerToOrigin(canvasToTurtle(downsample(raw, minGap)));
}
