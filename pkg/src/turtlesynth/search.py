"""Synthesis by search over the editing graph.

Two algorithms solve the same constrained problem: minimize the Hausdorff
distance between the drawn output and the target trajectory, over all
workspaces within `edit_budget` unit-cost edits of the initial one.

`iterative_deepening_search` exhaustively deepens a path-checking DFS and
emits a strictly improving candidate sequence; `sampling_search` performs
repeated model-guided rollouts of `edit_budget` commands from the start
state and keeps the best-scoring candidate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .editing import (
    EditCommand,
    TAG_START,
    apply_command,
    coarsen,
    enumerate_commands,
    format_command,
    replay,
)
from .hausdorff import hausdorff, hausdorff_below
from .lang import DEFAULT_CONFIG, RenderConfig, Workspace, interpret
from .models import CommandModel, sample_command


@dataclass(frozen=True)
class SynthesisProblem:
    """Initial program (as its command history), target trajectory, budgets."""

    initial_commands: tuple[EditCommand, ...]
    target: np.ndarray
    edit_budget: int = 6     # maximum number of edits from the initial program
    state_budget: int = 50_000  # maximum number of candidate programs evaluated

    def __post_init__(self):
        if self.edit_budget < 1:
            raise ValueError("edit_budget must be >= 1")
        if self.state_budget < 1:
            raise ValueError("state_budget must be >= 1")

    def initial_workspace(self) -> Workspace:
        return replay(self.initial_commands)


@dataclass
class Candidate:
    """One emitted program with its score and bookkeeping."""

    workspace: Workspace
    commands: tuple[EditCommand, ...]  # edits applied on top of the initial program
    distance: float
    depth: int
    states_seen: int


@dataclass
class SearchResult:
    candidates: list[Candidate]
    states: int
    elapsed: float = 0.0

    @property
    def best(self) -> Candidate:
        return self.candidates[-1]


def iterative_deepening_search(problem: SynthesisProblem,
                               cfg: RenderConfig = DEFAULT_CONFIG) -> SearchResult:
    """Depth-by-depth exhaustive search emitting strictly improving candidates.

    For each depth d = 1..edit_budget, a depth-limited DFS expands every
    feasible command; states whose workspace repeats one already on the
    current path are pruned (path checking), which keeps memory linear in d
    without losing any optimum.  States at depth exactly d are tested
    against the incumbent threshold with the early-exit Hausdorff check,
    and improvements tighten the threshold.  The state budget counts every
    generated state across all iterations.
    """
    started = time.perf_counter()
    p0 = problem.initial_workspace()
    t_star = np.asarray(problem.target, dtype=np.float64)
    d0 = hausdorff(interpret(p0, cfg), t_star)

    seq = [Candidate(p0, (), d0, 0, 0)]
    state = {"eps": d0, "states": 0, "done": d0 == 0.0}
    path_cmds: list[EditCommand] = []
    path_set: set[Workspace] = {p0}

    def dfs(w: Workspace, depth_left: int) -> None:
        for command in enumerate_commands(w):
            if state["done"] or state["states"] >= problem.state_budget:
                return
            state["states"] += 1
            succ = apply_command(w, command)
            if succ in path_set:
                continue
            path_cmds.append(command)
            if depth_left == 1:
                traj = interpret(succ, cfg)
                if hausdorff_below(traj, t_star, state["eps"]):
                    dist = hausdorff(traj, t_star)
                    seq.append(Candidate(succ, tuple(path_cmds),
                                         dist, len(path_cmds), state["states"]))
                    state["eps"] = dist
                    if dist == 0.0:
                        state["done"] = True
            else:
                path_set.add(succ)
                dfs(succ, depth_left - 1)
                path_set.discard(succ)
            path_cmds.pop()

    if not state["done"]:
        for depth in range(1, problem.edit_budget + 1):
            if state["done"] or state["states"] >= problem.state_budget:
                break
            dfs(p0, depth)

    return SearchResult(seq, state["states"], time.perf_counter() - started)


def sampling_search(problem: SynthesisProblem, model: CommandModel,
                    seed: int, cfg: RenderConfig = DEFAULT_CONFIG) -> SearchResult:
    """Model-guided random rollouts from the initial program.

    Runs floor(state_budget / edit_budget) rounds; each round restarts at
    the initial program and samples edit_budget commands sequentially,
    scoring every intermediate state against the incumbent.  Deterministic
    for a fixed seed.
    """
    started = time.perf_counter()
    rng = random.Random(seed)
    p0 = problem.initial_workspace()
    t_star = np.asarray(problem.target, dtype=np.float64)

    start_tag = (coarsen(problem.initial_commands[-1])
                 if problem.initial_commands else TAG_START)
    best = Candidate(p0, (), hausdorff(interpret(p0, cfg), t_star), 0, 0)

    rounds = problem.state_budget // problem.edit_budget
    states = 0
    for _ in range(rounds):
        w = p0
        prev = start_tag
        applied: list[EditCommand] = []
        for _ in range(problem.edit_budget):
            command = sample_command(model, w, prev, rng)
            w = apply_command(w, command)
            applied.append(command)
            prev = coarsen(command)
            states += 1
            traj = interpret(w, cfg)
            if best.distance > 0 and hausdorff_below(traj, t_star, best.distance):
                dist = hausdorff(traj, t_star)
                best = Candidate(w, tuple(applied), dist, len(applied), states)

    return SearchResult([best], states, time.perf_counter() - started)


ALGORITHMS = ("idps", "uniform", "nonuniform")


def run_synthesis(problem: SynthesisProblem, algorithm: str,
                  model: CommandModel | None = None, seed: int | None = None,
                  cfg: RenderConfig = DEFAULT_CONFIG) -> SearchResult:
    """Dispatch to the named algorithm ('idps', 'uniform', or 'nonuniform').

    The sampling algorithms need a fitted model and a seed; the model's
    mode is forced to match the requested algorithm.
    """
    if algorithm == "idps":
        return iterative_deepening_search(problem, cfg)
    if algorithm in ("uniform", "nonuniform"):
        if model is None:
            from .models import uniform_model
            model = uniform_model()
        if seed is None:
            raise ValueError("sampling algorithms require a seed")
        from dataclasses import replace as _replace
        model = _replace(model, mode=algorithm)
        return sampling_search(problem, model, seed, cfg)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def result_to_json(problem: SynthesisProblem, result: SearchResult,
                   cfg: RenderConfig = DEFAULT_CONFIG) -> dict:
    """Serializable view shared by the CLI and the HTTP service."""
    candidates = []
    for cand in result.candidates:
        traj = interpret(cand.workspace, cfg)
        candidates.append({
            "commands_delta": [format_command(c) for c in cand.commands],
            "commands_full": [format_command(c) for c in
                              tuple(problem.initial_commands) + cand.commands],
            "trajectory": traj.tolist(),
            "distance": cand.distance,
            "depth": cand.depth,
        })
    return {
        "candidates": candidates,
        "distance": result.best.distance,
        "states": result.states,
        "elapsed_seconds": result.elapsed,
    }
