/**
 * End-to-end loop against the real synthesis service: seed a line
 * program, draw a square stroke, request a completion, accept the top
 * candidate, and check the re-interpreted program matches the candidate's
 * trajectory point-for-point. Skipped when no Python service is
 * available on the machine.
 */

import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { UiSession } from "../src/session.js";
import { prepareStroke, Point } from "../src/stroke.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

const pythonAvailable = spawnSync("python3", ["-c", "import turtlesynth"]).status === 0;

let server: ChildProcess | null = null;

async function waitForHealth(api: ApiClient, timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      await api.health();
      return;
    } catch {
      if (Date.now() > deadline) throw new Error("service did not come up");
      await new Promise((r) => setTimeout(r, 200));
    }
  }
}

/** A freehand-ish square in canvas coordinates: 50 units per side, y down. */
function squareStrokeCanvas(): Point[] {
  const pts: Point[] = [];
  const leg = (from: Point, to: Point) => {
    const n = 25;
    for (let i = 0; i < n; i++) {
      pts.push([
        from[0] + ((to[0] - from[0]) * i) / n,
        from[1] + ((to[1] - from[1]) * i) / n,
      ]);
    }
  };
  leg([100, 300], [100, 250]); // up on screen = north
  leg([100, 250], [150, 250]);
  leg([150, 250], [150, 300]);
  leg([150, 300], [100, 300]);
  pts.push([100, 300]);
  return pts;
}

describe.skipIf(!pythonAvailable)("sketch-and-complete loop", () => {
  const api = new ApiClient(BASE);

  beforeAll(async () => {
    server = spawn("python3", [
      "-c",
      "import sys; from turtlesynth.service import serve; serve(int(sys.argv[1]))",
      String(PORT),
    ], { stdio: "ignore" });
    await waitForHealth(api);
  }, 30_000);

  afterAll(() => {
    server?.kill();
  });

  it("completes a square stroke over a seeded line program", async () => {
    const session = new UiSession(api, { algorithm: "idps", budget: 50_000, cost: 2 });

    // Seed: a 4x repeat around a single move draws a straight line; the
    // detached turn block is on the bench, waiting to be wired in.
    for (const text of ["get repeat", "change 2 in 1 to 4", "get move",
                        "connect 2 inside 1", "get turn"]) {
      await session.editProgram(text);
    }
    const line = session.programTrajectory;
    expect(new Set(line.map(([x]) => Math.round(x))).size).toBe(1); // vertical line

    session.setStroke(prepareStroke(squareStrokeCanvas()));
    const candidates = await session.requestCompletion();

    // The incumbents strictly improve, and every number shown to the user
    // is exactly what the service reported.
    const distances = candidates.map((c) => c.distance);
    for (let i = 1; i < distances.length; i++) {
      expect(distances[i]).toBeLessThan(distances[i - 1]);
    }
    expect(session.topCandidate()!.distance)
      .toBe(session.lastResult!.candidates.at(-1)!.distance);

    // Accept the top candidate; the re-interpreted program must reproduce
    // the candidate's trajectory point-for-point.
    const best = session.topCandidate()!;
    expect(best.commands_delta).toEqual(["connect 3 under 2", "change 30 in 3 to 90"]);
    await session.acceptCandidate(best);
    expect(session.commands).toEqual(best.commands_full);
    expect(session.programTrajectory).toEqual(best.trajectory);

    // The accepted drawing is a closed square, not a line.
    const pts = session.programTrajectory;
    const [x0, y0] = pts[0];
    const [xn, yn] = pts[pts.length - 1];
    expect(Math.hypot(xn - x0, yn - y0)).toBeLessThan(1e-9);
    expect(new Set(pts.map(([x]) => Math.round(x))).size).toBeGreaterThan(1);
  }, 60_000);

  it("re-requesting after accepting cannot regress", async () => {
    const session = new UiSession(api, { algorithm: "idps", budget: 20_000, cost: 1 });
    await session.editProgram("get move");
    session.setStroke(prepareStroke(squareStrokeCanvas()));

    const first = await session.requestCompletion();
    const accepted = first[first.length - 1];
    await session.acceptCandidate(accepted);

    const second = await session.requestCompletion();
    expect(second[second.length - 1].distance)
      .toBeLessThanOrEqual(accepted.distance);
  }, 60_000);

  it("a stroke matching the program's own drawing needs no edits", async () => {
    const session = new UiSession(api, { algorithm: "idps", budget: 10_000, cost: 1 });
    await session.editProgram("get move");
    session.setStroke(session.programTrajectory);
    const candidates = await session.requestCompletion();
    expect(candidates[0].commands_delta).toEqual([]);
    expect(candidates[candidates.length - 1].distance).toBe(0);
  }, 60_000);
});
