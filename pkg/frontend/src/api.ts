/**
 * Typed client for the synthesis service. The UI never computes distances
 * or program semantics itself; everything it displays comes back through
 * these four endpoints.
 */

import type { Point } from "./stroke.js";

export interface WorkspaceBlock {
  id: number;
  kind: string;
  value?: number;
  body?: WorkspaceBlock[];
}

export interface InterpretResponse {
  trajectory: Point[];
  workspace: WorkspaceBlock[][];
}

export interface Candidate {
  commands_delta: string[];
  commands_full: string[];
  trajectory: Point[];
  distance: number;
  depth: number;
}

export interface SynthesisResult {
  candidates: Candidate[];
  distance: number;
  states: number;
  elapsed_seconds: number;
}

export interface SynthesizeRequest {
  commands: string[];
  trajectory: Point[];
  algorithm: string;
  budget: number;
  cost: number;
  seed: number;
}

export type JobStatus = "pending" | "running" | "done" | "error";

export interface JobResponse {
  status: JobStatus;
  result?: SynthesisResult;
  error?: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  const body = await res.json();
  if (!res.ok) {
    const detail = typeof body?.detail === "string"
      ? body.detail
      : JSON.stringify(body?.detail ?? body);
    throw new ApiError(res.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  async health(): Promise<{ status: string }> {
    return unwrap(await fetch(`${this.baseUrl}/api/health`));
  }

  async interpret(commands: string[]): Promise<InterpretResponse> {
    return unwrap(
      await fetch(`${this.baseUrl}/api/interpret`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ commands }),
      }),
    );
  }

  async synthesize(req: SynthesizeRequest): Promise<{ job_id: string }> {
    return unwrap(
      await fetch(`${this.baseUrl}/api/synthesize`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
      }),
    );
  }

  async job(id: string): Promise<JobResponse> {
    return unwrap(await fetch(`${this.baseUrl}/api/jobs/${id}`));
  }

  /** Poll a job until it finishes; cadence defaults to the UI's 500 ms. */
  async waitForJob(
    id: string,
    intervalMs = 500,
    timeoutMs = 120_000,
  ): Promise<SynthesisResult> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.job(id);
      if (job.status === "done" && job.result) return job.result;
      if (job.status === "error") {
        throw new ApiError(500, job.error ?? "synthesis failed");
      }
      if (Date.now() > deadline) throw new ApiError(504, "job timed out");
      await new Promise((r) => setTimeout(r, intervalMs));
    }
  }
}
