"""k-ahead evaluation: delete the final k commands of an item, synthesize a
completion, and score it against the full program and drawn trajectory.

Metrics per item: accuracy (semantic recovery of the full program),
Hausdorff error of the completion against the drawing, and relative error
reduction from the truncated program.  Aggregation reports per-(algorithm,
k) means plus the baseline error of the users' own completions.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .corpus import CorpusItem, target_trajectory
from .editing import replay
from .hausdorff import hausdorff
from .lang import DEFAULT_CONFIG, RenderConfig, interpret, semantically_equal
from .models import CommandModel
from .search import SynthesisProblem, run_synthesis


class PrefixInfeasible(ValueError):
    """k exceeds the length of the item's command sequence."""


@dataclass
class KAheadResult:
    item_id: str
    k: int
    algorithm: str
    acc: int
    err: float
    delta: float
    runtime: float
    states: int


def k_ahead(item: CorpusItem, algorithm: str, k: int,
            budget: int = 50_000, edit_budget: int = 6,
            seed: int | None = None, model: CommandModel | None = None,
            cfg: RenderConfig = DEFAULT_CONFIG) -> KAheadResult:
    """Run one algorithm on one item with the final k commands removed."""
    if k < 0 or k > len(item.commands):
        raise PrefixInfeasible(
            f"k={k} but item {item.id} has {len(item.commands)} commands")

    prefix = item.commands[:len(item.commands) - k]
    t_star = target_trajectory(item, cfg)
    problem = SynthesisProblem(prefix, t_star, edit_budget, budget)

    started = time.perf_counter()
    result = run_synthesis(problem, algorithm, model=model, seed=seed, cfg=cfg)
    runtime = time.perf_counter() - started

    best = result.best
    full_program = replay(item.commands)
    acc = 1 if semantically_equal(best.workspace, full_program, cfg) else 0
    err = hausdorff(interpret(best.workspace, cfg), t_star)
    err0 = hausdorff(interpret(replay(prefix), cfg), t_star)
    # Relative reduction is undefined on a perfect truncated fit; report 0.
    delta = 0.0 if err0 == 0 else (err0 - err) / err0

    return KAheadResult(item.id, k, algorithm, acc, err, delta,
                        runtime, result.states)


def aggregate(results, corpus=None,
              cfg: RenderConfig = DEFAULT_CONFIG) -> dict:
    """Per-(algorithm, k) means, plus the users'-completion baseline error."""
    if not results:
        raise ValueError("no results to aggregate")
    groups: dict[tuple[str, int], list[KAheadResult]] = {}
    for r in results:
        groups.setdefault((r.algorithm, r.k), []).append(r)

    def mean(values):
        return sum(values) / len(values)

    summary = {
        "groups": [
            {
                "algorithm": algo,
                "k": k,
                "n": len(rs),
                "mean_acc": mean([r.acc for r in rs]),
                "mean_err": mean([r.err for r in rs]),
                "mean_delta": mean([r.delta for r in rs]),
                "mean_runtime": mean([r.runtime for r in rs]),
                "mean_states": mean([r.states for r in rs]),
            }
            for (algo, k), rs in sorted(groups.items())
        ]
    }
    if corpus is not None:
        summary["baseline_mean_err"] = mean([
            hausdorff(interpret(item.program(), cfg), target_trajectory(item, cfg))
            for item in corpus
        ])
    return summary


def write_csv(results, path) -> None:
    fields = ["item_id", "k", "algorithm", "acc", "err", "delta",
              "runtime", "states"]
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        for r in results:
            writer.writerow(asdict(r))


def write_report(results, out_dir, corpus=None,
                 cfg: RenderConfig = DEFAULT_CONFIG) -> dict:
    """Emit results.csv, summary.json, and the three SVG panels."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(results, out / "results.csv")
    summary = aggregate(results, corpus=corpus, cfg=cfg)
    with open(out / "summary.json", "w") as f:
        json.dump(summary, f, indent=2)
    write_svg_plots(summary, out)
    return summary


def write_svg_plots(summary: dict, out_dir) -> None:
    """Grouped bar charts of mean accuracy, error, and error reduction vs k."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    groups = summary["groups"]
    algos = sorted({g["algorithm"] for g in groups})
    ks = sorted({g["k"] for g in groups})
    panels = [
        ("mean_acc", "Mean accuracy", "accuracy.svg"),
        ("mean_err", "Mean Hausdorff error", "error.svg"),
        ("mean_delta", "Mean relative error reduction", "error_reduction.svg"),
    ]
    lookup = {(g["algorithm"], g["k"]): g for g in groups}
    width = 0.8 / max(len(algos), 1)
    for key, label, filename in panels:
        fig, ax = plt.subplots(figsize=(6, 4))
        for j, algo in enumerate(algos):
            xs = [i + j * width for i in range(len(ks))]
            ys = [lookup.get((algo, k), {}).get(key, 0.0) for k in ks]
            ax.bar(xs, ys, width=width, label=algo)
        if key == "mean_err" and "baseline_mean_err" in summary:
            ax.axhline(summary["baseline_mean_err"], linestyle="--",
                       color="black", linewidth=1, label="user completion")
        ax.set_xticks([i + width * (len(algos) - 1) / 2 for i in range(len(ks))])
        ax.set_xticklabels([str(k) for k in ks])
        ax.set_xlabel("k-ahead task")
        ax.set_ylabel(label)
        ax.legend()
        fig.tight_layout()
        fig.savefig(out / filename, format="svg")
        plt.close(fig)
