"""HTTP facade over interpretation and synthesis.

Endpoints:
    GET  /api/health
    POST /api/interpret   -> trajectory + workspace structure
    POST /api/synthesize  -> {"job_id": ...}
    GET  /api/jobs/{id}   -> job status and, when done, the result

Synthesis runs on a bounded worker pool behind a polling job pattern so the
UI never blocks on a long search.  The service holds no session state;
identical requests produce identical results (timing fields aside).
"""

from __future__ import annotations

import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .editing import (
    CommandSyntaxError,
    InfeasibleCommand,
    parse_command,
)
from .lang import (
    REPEAT,
    RenderConfig,
    Workspace,
    densify_polyline,
    interpret,
    register_to_origin,
)
from .editing import replay
from .models import CommandModel, uniform_model
from .search import ALGORITHMS, SynthesisProblem, result_to_json, run_synthesis


@dataclass
class ServiceConfig:
    max_budget: int = 200_000
    max_cost: int = 8
    workers: int = 2
    job_ttl: float = 600.0  # seconds
    cors_origins: tuple[str, ...] = ("*",)
    model: CommandModel | None = None


class InterpretRequest(BaseModel):
    commands: list[str]
    move_length: float = 50.0
    sample_step: float = 5.0


class SynthesizeRequest(BaseModel):
    commands: list[str]
    trajectory: list[tuple[float, float]] = Field(min_length=1)
    algorithm: str = "idps"
    budget: int = 50_000
    cost: int = 6
    seed: int = 0
    move_length: float = 50.0
    sample_step: float = 5.0


@dataclass
class Job:
    status: str = "pending"  # pending | running | done | error
    result: dict | None = None
    error: str | None = None
    created: float = field(default_factory=time.monotonic)


def _workspace_summary(w: Workspace) -> list:
    def block(b) -> dict:
        doc = {"id": b.id, "kind": b.kind}
        if b.value is not None:
            doc["value"] = b.value
        if b.kind == REPEAT:
            doc["body"] = [block(c) for c in b.body]
        return doc

    return [[block(b) for b in chain] for chain in w.roots]


def _parse_commands_or_400(texts: list[str]):
    commands = []
    for i, text in enumerate(texts):
        try:
            commands.append(parse_command(text))
        except CommandSyntaxError as e:
            raise HTTPException(400, f"command {i}: {e}")
    try:
        replay(commands)
    except InfeasibleCommand as e:
        raise HTTPException(400, f"command {e.index} is infeasible: {e.reason}")
    return tuple(commands)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="turtlesynth")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    jobs: dict[str, Job] = {}
    jobs_lock = threading.Lock()
    executor = ThreadPoolExecutor(max_workers=config.workers)

    def expire_jobs() -> None:
        cutoff = time.monotonic() - config.job_ttl
        with jobs_lock:
            for job_id in [j for j, job in jobs.items() if job.created < cutoff]:
                del jobs[job_id]

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/interpret")
    def handle_interpret(req: InterpretRequest):
        commands = _parse_commands_or_400(req.commands)
        cfg = RenderConfig(req.move_length, req.sample_step)
        w = replay(commands)
        return {
            "trajectory": interpret(w, cfg).tolist(),
            "workspace": _workspace_summary(w),
        }

    @app.post("/api/synthesize")
    def handle_synthesize(req: SynthesizeRequest):
        if req.algorithm not in ALGORITHMS:
            raise HTTPException(400, f"unknown algorithm {req.algorithm!r}")
        if not 1 <= req.budget <= config.max_budget:
            raise HTTPException(
                422, f"budget must be in [1, {config.max_budget}]")
        if not 1 <= req.cost <= config.max_cost:
            raise HTTPException(422, f"cost must be in [1, {config.max_cost}]")
        commands = _parse_commands_or_400(req.commands)
        cfg = RenderConfig(req.move_length, req.sample_step)
        target = densify_polyline(
            register_to_origin(np.asarray(req.trajectory)), cfg.sample_step)
        problem = SynthesisProblem(commands, target, req.cost, req.budget)
        model = config.model or uniform_model()

        job_id = uuid.uuid4().hex
        with jobs_lock:
            jobs[job_id] = Job()
        expire_jobs()

        def work():
            with jobs_lock:
                jobs[job_id].status = "running"
            try:
                result = run_synthesis(problem, req.algorithm,
                                       model=model, seed=req.seed, cfg=cfg)
                doc = result_to_json(problem, result, cfg)
                with jobs_lock:
                    jobs[job_id].result = doc
                    jobs[job_id].status = "done"
            except Exception as e:  # surfaced to the polling client
                with jobs_lock:
                    jobs[job_id].error = str(e)
                    jobs[job_id].status = "error"

        executor.submit(work)
        return {"job_id": job_id}

    @app.get("/api/jobs/{job_id}")
    def job_status(job_id: str):
        expire_jobs()
        with jobs_lock:
            job = jobs.get(job_id)
            if job is None:
                raise HTTPException(404, "unknown or expired job")
            doc = {"status": job.status}
            if job.result is not None:
                doc["result"] = job.result
            if job.error is not None:
                doc["error"] = job.error
            return doc

    return app


def serve(port: int = 8080, config: ServiceConfig | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host="0.0.0.0", port=port)
