/**
 * The UI session: a replayable command list, the current registered
 * stroke, and the latest candidate set. All mutations go through the
 * service so the command list can never drift into an unreplayable state,
 * and every displayed number is a verbatim service response field.
 */

import { ApiClient, Candidate, InterpretResponse, SynthesisResult } from "./api.js";
import type { Point } from "./stroke.js";

export interface SessionOptions {
  algorithm: string;
  budget: number;
  cost: number;
  seed: number;
}

export const DEFAULT_OPTIONS: SessionOptions = {
  algorithm: "idps",
  budget: 50_000,
  cost: 6,
  seed: 0,
};

export class UiSession {
  commands: string[] = [];
  stroke: Point[] = [];
  candidates: Candidate[] = [];
  lastResult: SynthesisResult | null = null;
  lastAcceptedDistance: number | null = null;
  programTrajectory: Point[] = [];
  workspace: InterpretResponse["workspace"] = [];
  options: SessionOptions;

  constructor(
    readonly api: ApiClient,
    options: Partial<SessionOptions> = {},
  ) {
    this.options = { ...DEFAULT_OPTIONS, ...options };
  }

  /**
   * Append one textual editing command, but only if the service confirms
   * the extended list still replays. On rejection the session is
   * untouched and the service's message is thrown for inline display.
   */
  async editProgram(commandText: string): Promise<void> {
    const attempt = [...this.commands, commandText.trim()];
    const res = await this.api.interpret(attempt);
    this.commands = attempt;
    this.programTrajectory = res.trajectory;
    this.workspace = res.workspace;
  }

  setStroke(registered: Point[]): void {
    this.stroke = registered;
  }

  /** Run synthesis against the current stroke; candidates arrive best-last. */
  async requestCompletion(): Promise<Candidate[]> {
    if (this.stroke.length === 0) {
      throw new Error("draw a stroke first");
    }
    const { job_id } = await this.api.synthesize({
      commands: this.commands,
      trajectory: this.stroke,
      algorithm: this.options.algorithm,
      budget: this.options.budget,
      cost: this.options.cost,
      seed: this.options.seed,
    });
    const result = await this.api.waitForJob(job_id);
    this.lastResult = result;
    this.candidates = result.candidates;
    return this.candidates;
  }

  topCandidate(): Candidate | null {
    return this.candidates.length > 0
      ? this.candidates[this.candidates.length - 1]
      : null;
  }

  /**
   * Adopt a candidate: its full command sequence becomes the session's
   * program, re-validated and re-drawn through the service.
   */
  async acceptCandidate(candidate: Candidate): Promise<void> {
    const res = await this.api.interpret(candidate.commands_full);
    this.commands = [...candidate.commands_full];
    this.programTrajectory = res.trajectory;
    this.workspace = res.workspace;
    this.lastAcceptedDistance = candidate.distance;
    this.candidates = [];
  }
}
