"""Command-line entry point: `turtle-synth`.

Subcommands wire the library together: `render` and `dist` for debugging
trajectories, `fit` for model estimation, `corpus` for validation and
synthetic generation, `synth` for one synthesis run, `eval` for the k-ahead
harness, and `serve` for the HTTP service.  Every run that writes outputs
also writes a manifest recording parameters, seeds, and input fingerprints
so it can be reproduced bit-identically (timing aside).
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__
from .corpus import (
    CorpusError,
    SyntheticSpec,
    generate_synthetic_corpus,
    load_corpus,
    save_corpus,
)
from .editing import CommandSyntaxError, InfeasibleCommand, parse_commands
from .evaluate import k_ahead, write_report
from .hausdorff import EmptySetError, hausdorff
from .lang import RenderConfig, densify_polyline, interpret, register_to_origin
from .editing import replay
from .models import CommandModel, fit_model, NONUNIFORM
from .search import ALGORITHMS, SynthesisProblem, result_to_json, run_synthesis

EXIT_INPUT = 3
EXIT_RUNTIME = 4


def _read_trajectory(path) -> np.ndarray:
    rows = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            x, y = line.split()
            rows.append((float(x), float(y)))
    return np.asarray(rows, dtype=np.float64).reshape(-1, 2)


def _write_trajectory(points: np.ndarray, path) -> None:
    with open(path, "w") as f:
        for x, y in points:
            f.write(f"{float(x)!r} {float(y)!r}\n")


def _read_commands(path):
    with open(path) as f:
        return parse_commands(f)


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _fingerprint(path) -> str:
    p = Path(path)
    if p.is_dir():
        h = hashlib.sha256()
        for child in sorted(p.glob("*.json")):
            h.update(child.name.encode())
            h.update(_sha256(child).encode())
        return h.hexdigest()
    return _sha256(p)


def _write_manifest(out_path, subcommand: str, params: dict,
                    inputs: dict, outputs: list) -> None:
    manifest = {
        "tool": "turtle-synth",
        "version": __version__,
        "subcommand": subcommand,
        "parameters": params,
        "inputs": {str(k): _fingerprint(k) for k in inputs},
        "outputs": [str(o) for o in outputs],
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    with open(out_path, "w") as f:
        json.dump(manifest, f, indent=2)


def render_options(fn):
    fn = click.option("--move-length", type=float, default=50.0,
                      show_default=True, help="Move-block segment length.")(fn)
    fn = click.option("--sample-step", type=float, default=5.0,
                      show_default=True, help="Trajectory sampling spacing.")(fn)
    return fn


@click.group()
@click.version_option(__version__)
def cli():
    """Complete or repair turtle block programs to match a drawn trajectory."""


@cli.command()
@click.option("--program", required=True, type=click.Path(exists=True),
              help="Text file with one editing command per line.")
@click.option("--out", required=True, type=click.Path(),
              help="Output trajectory file (x y per line).")
@render_options
def render(program, out, move_length, sample_step):
    """Interpret a program and write its trajectory."""
    cfg = RenderConfig(move_length, sample_step)
    commands = _read_commands(program)
    points = interpret(replay(commands), cfg)
    _write_trajectory(points, out)
    _write_manifest(Path(out).with_suffix(".manifest.json"), "render",
                    {"move_length": move_length, "sample_step": sample_step},
                    {program: None}, [out])


@cli.command()
@click.argument("traj_a", type=click.Path(exists=True))
@click.argument("traj_b", type=click.Path(exists=True))
def dist(traj_a, traj_b):
    """Print the Hausdorff distance between two trajectory files."""
    a = _read_trajectory(traj_a)
    b = _read_trajectory(traj_b)
    click.echo(f"{hausdorff(a, b):g}")


@cli.command()
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path())
@click.option("--mode", type=click.Choice(["uniform", "nonuniform"]),
              default=NONUNIFORM, show_default=True)
def fit(corpus_dir, out, mode):
    """Fit the command model (bigram table and connect-locality lambdas)."""
    items = load_corpus(corpus_dir)
    model = fit_model(items, mode=mode)
    model.save(out)
    _write_manifest(Path(out).with_suffix(".manifest.json"), "fit",
                    {"mode": mode}, {corpus_dir: None}, [out])
    click.echo(f"fitted model on {len(items)} items -> {out}")


@cli.group()
def corpus():
    """Validate or generate corpora of editing sessions."""


@corpus.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
def validate(directory):
    """Load every item, replay-checking its command sequence."""
    items = load_corpus(directory)
    click.echo(f"{len(items)} items OK")


@corpus.command()
@click.option("--out", required=True, type=click.Path())
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--noise", type=float, default=0.0, show_default=True)
@click.option("--min-commands", type=int, default=8, show_default=True)
@click.option("--max-commands", type=int, default=16, show_default=True)
def generate(out, n, seed, noise, min_commands, max_commands):
    """Generate a synthetic corpus of editing sessions with drawn output."""
    spec = SyntheticSpec(seed=seed, min_commands=min_commands,
                         max_commands=max_commands, noise=noise)
    items = generate_synthetic_corpus(spec, n)
    paths = save_corpus(items, out)
    _write_manifest(Path(out) / "manifest.json", "corpus generate",
                    {"n": n, "seed": seed, "noise": noise,
                     "min_commands": min_commands, "max_commands": max_commands},
                    {}, paths)
    click.echo(f"wrote {len(paths)} items to {out}")


@cli.command()
@click.option("--algo", type=click.Choice(ALGORITHMS), required=True)
@click.option("--budget", type=int, default=50_000, show_default=True)
@click.option("--cost", type=int, default=6, show_default=True)
@click.option("--seed", type=int, default=None,
              help="Required for the sampling algorithms.")
@click.option("--program", required=True, type=click.Path(exists=True))
@click.option("--target", required=True, type=click.Path(exists=True))
@click.option("--model", "model_path", type=click.Path(exists=True),
              help="Fitted model JSON; defaults to an untrained model.")
@click.option("--out", required=True, type=click.Path())
@render_options
def synth(algo, budget, cost, seed, program, target, model_path, out,
          move_length, sample_step):
    """Synthesize a completion of PROGRAM matching the TARGET trajectory."""
    if algo != "idps" and seed is None:
        raise click.UsageError(f"--seed is required for --algo {algo}")
    cfg = RenderConfig(move_length, sample_step)
    commands = _read_commands(program)
    raw = _read_trajectory(target)
    t_star = densify_polyline(register_to_origin(raw), cfg.sample_step)
    problem = SynthesisProblem(tuple(commands), t_star, cost, budget)
    model = CommandModel.load(model_path) if model_path else None
    result = run_synthesis(problem, algo, model=model, seed=seed, cfg=cfg)
    doc = result_to_json(problem, result, cfg)
    with open(out, "w") as f:
        json.dump(doc, f, indent=2)
    _write_manifest(Path(out).with_suffix(".manifest.json"), "synth",
                    {"algo": algo, "budget": budget, "cost": cost, "seed": seed,
                     "move_length": move_length, "sample_step": sample_step},
                    {program: None, target: None,
                     **({model_path: None} if model_path else {})},
                    [out])
    click.echo(f"distance {result.best.distance:g} "
               f"after {result.states} states -> {out}")


def _parse_ks(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t]


@cli.command("eval")
@click.option("--corpus", "corpus_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--algos", default="idps,uniform,nonuniform", show_default=True)
@click.option("--k", "k_spec", default="1..6", show_default=True,
              help="Range '1..6' or comma list '1,3,5'.")
@click.option("--budget", type=int, default=50_000, show_default=True)
@click.option("--cost", type=int, default=6, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
@render_options
def eval_cmd(corpus_dir, algos, k_spec, budget, cost, seed, out_dir,
             move_length, sample_step):
    """Run the k-ahead protocol over a corpus and write a report."""
    cfg = RenderConfig(move_length, sample_step)
    items = load_corpus(corpus_dir)
    algo_list = [a for a in algos.split(",") if a]
    for a in algo_list:
        if a not in ALGORITHMS:
            raise click.UsageError(f"unknown algorithm {a!r}")
    ks = _parse_ks(k_spec)
    model = fit_model(items, mode=NONUNIFORM)
    results = []
    for algo in algo_list:
        for k in ks:
            for i, item in enumerate(items):
                if k > len(item.commands):
                    continue
                results.append(k_ahead(
                    item, algo, k, budget=budget, edit_budget=cost,
                    seed=seed + i, model=model, cfg=cfg))
    summary = write_report(results, out_dir, corpus=items, cfg=cfg)
    _write_manifest(Path(out_dir) / "manifest.json", "eval",
                    {"algos": algo_list, "k": ks, "budget": budget,
                     "cost": cost, "seed": seed,
                     "move_length": move_length, "sample_step": sample_step},
                    {corpus_dir: None},
                    [Path(out_dir) / n for n in
                     ("results.csv", "summary.json", "accuracy.svg",
                      "error.svg", "error_reduction.svg")])
    for g in summary["groups"]:
        click.echo(f"{g['algorithm']:>10s} k={g['k']}  acc={g['mean_acc']:.3f}  "
                   f"err={g['mean_err']:.2f}  delta={g['mean_delta']:.3f}")


@cli.command()
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--max-budget", type=int, default=200_000, show_default=True)
@click.option("--workers", type=int, default=2, show_default=True)
@click.option("--model", "model_path", type=click.Path(exists=True))
def serve(port, max_budget, workers, model_path):
    """Start the HTTP service."""
    from .service import ServiceConfig, serve as run_server

    model = CommandModel.load(model_path) if model_path else None
    run_server(port, ServiceConfig(max_budget=max_budget, workers=workers,
                                   model=model))


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return 2
    except (CorpusError, CommandSyntaxError, InfeasibleCommand, EmptySetError,
            FileNotFoundError, ValueError) as e:
        click.echo(f"input error: {e}", err=True)
        return EXIT_INPUT
    except Exception as e:  # pragma: no cover
        click.echo(f"error: {e}", err=True)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
