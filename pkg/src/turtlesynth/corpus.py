"""Corpora of (editing-command sequence, drawn trajectory) items.

Each item lives in its own JSON file:

    {
      "id": "item-003",
      "commands": ["get repeat", "get move", "connect 2 inside 1", ...],
      "trajectory": [[x, y], [x, y], ...],
      "metadata": {}
    }

Commands use the textual syntax of `turtlesynth.editing`; trajectories are
ordered polylines in canvas units, stored as drawn.  Loading validates every
sequence by replaying it from the empty workspace.

Since no participant recordings ship with this package, a seeded synthetic
generator produces corpora with the same structure: random feasible editing
sessions biased toward get/connect/change motifs, paired with the program's
own drawing plus optional Gaussian stroke noise.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .editing import (
    Change,
    CommandSyntaxError,
    ConnectInside,
    ConnectUnder,
    Disconnect,
    EditCommand,
    Get,
    InfeasibleCommand,
    Remove,
    apply_command,
    enumerate_commands,
    format_command,
    parse_command,
    replay,
)
from .lang import (
    DEFAULT_CONFIG,
    EMPTY_WORKSPACE,
    MOVE,
    REPEAT,
    TURN,
    RenderConfig,
    densify_polyline,
    interpret,
    register_to_origin,
)


class CorpusError(Exception):
    def __init__(self, file, detail: str):
        super().__init__(f"{file}: {detail}")
        self.file = file
        self.detail = detail


class ParseError(CorpusError):
    """Malformed item file (bad JSON, bad schema, or bad command text)."""


class ReplayError(CorpusError):
    """Command sequence that cannot be replayed from the empty workspace."""

    def __init__(self, file, index: int, detail: str):
        super().__init__(file, f"command {index}: {detail}")
        self.index = index


@dataclass
class CorpusItem:
    id: str
    commands: tuple[EditCommand, ...]
    trajectory: np.ndarray  # ordered polyline, as drawn
    metadata: dict = field(default_factory=dict)

    def program(self):
        return replay(self.commands)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "commands": [format_command(c) for c in self.commands],
            "trajectory": [[float(x), float(y)] for x, y in self.trajectory],
            "metadata": self.metadata,
        }


def target_trajectory(item: CorpusItem, cfg: RenderConfig = DEFAULT_CONFIG) -> np.ndarray:
    """The drawn polyline registered to the origin and densified for comparison."""
    return densify_polyline(register_to_origin(item.trajectory), cfg.sample_step)


def load_item(path) -> CorpusItem:
    path = Path(path)
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(path, f"line {e.lineno}: {e.msg}") from None

    for key in ("id", "commands", "trajectory"):
        if key not in doc:
            raise ParseError(path, f"missing field {key!r}")
    commands = []
    for i, text in enumerate(doc["commands"]):
        try:
            commands.append(parse_command(text))
        except CommandSyntaxError as e:
            raise ParseError(path, f"command {i}: {e}") from None
    trajectory = np.asarray(doc["trajectory"], dtype=np.float64)
    if trajectory.size == 0:
        raise ParseError(path, "empty trajectory")
    if trajectory.ndim != 2 or trajectory.shape[1] != 2:
        raise ParseError(path, "trajectory must be a list of [x, y] pairs")

    try:
        replay(commands)
    except InfeasibleCommand as e:
        raise ReplayError(path, e.index, e.reason) from None

    return CorpusItem(str(doc["id"]), tuple(commands), trajectory,
                      dict(doc.get("metadata", {})))


def load_corpus(path) -> list[CorpusItem]:
    """Load every *.json item in a directory, sorted by filename.

    A `manifest.json` left by the generator is not an item and is skipped.
    """
    root = Path(path)
    return [load_item(p) for p in sorted(root.glob("*.json"))
            if p.name != "manifest.json"]


def save_item(item: CorpusItem, path) -> None:
    with open(path, "w") as f:
        json.dump(item.to_json(), f, indent=2)


def save_corpus(items, directory) -> list[Path]:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    paths = []
    for item in items:
        p = root / f"{item.id}.json"
        save_item(item, p)
        paths.append(p)
    return paths


# ---------------------------------------------------------------------------
# Synthetic corpus generation.

@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters for the synthetic editing-session generator."""

    seed: int
    min_commands: int = 8
    max_commands: int = 16
    noise: float = 0.0  # stroke-noise standard deviation, canvas units

    def __post_init__(self):
        if self.noise < 0:
            raise ValueError("noise must be >= 0")
        if not 1 <= self.min_commands <= self.max_commands:
            raise ValueError("bad command-count range")


_GET_WEIGHTS = ((MOVE, 0.5), (TURN, 0.3), (REPEAT, 0.2))


def _weighted_kind(rng: random.Random) -> str:
    return rng.choices([k for k, _ in _GET_WEIGHTS],
                       weights=[w for _, w in _GET_WEIGHTS], k=1)[0]


def random_session(rng: random.Random, length: int) -> tuple[EditCommand, ...]:
    """A feasible editing session of exactly `length` commands.

    Heavily biased toward the get / connect-to-recent / change-value motif
    so that locality statistics fitted from generated corpora carry signal;
    occasional disconnects and removes keep all command families represented.
    """
    w = EMPTY_WORKSPACE
    commands: list[EditCommand] = []

    def push(c: EditCommand) -> bool:
        nonlocal w
        try:
            w = apply_command(w, c)
        except InfeasibleCommand:
            return False
        commands.append(c)
        return True

    while len(commands) < length:
        blocks = sorted(w.ids(), reverse=True)
        roll = rng.random()
        if not blocks or roll < 0.70:
            kind = _weighted_kind(rng)
            push(Get(kind))
            new_id = w.next_id - 1
            live = sorted(w.ids(), reverse=True)
            if len(live) >= 2 and rng.random() < 0.95:
                dest = live[1] if rng.random() < 0.9 else rng.choice(live[1:])
                dest_block = w.find(dest)
                if dest_block.kind == REPEAT and rng.random() < 0.6:
                    push(ConnectInside(new_id, dest))
                else:
                    push(ConnectUnder(new_id, dest))
            block = w.find(new_id)
            if block.kind in (TURN, REPEAT) and rng.random() < 0.7:
                domain = (list(range(30, 360, 30)) if block.kind == TURN
                          else [2, 3, 4, 5])
                choices = [v for v in domain if v != block.value]
                push(Change(new_id, block.value, rng.choice(choices)))
        elif roll < 0.85:
            changes = [c for c in enumerate_commands(w) if isinstance(c, Change)]
            if changes:
                push(rng.choice(changes))
        elif roll < 0.91:
            seps = [c for c in enumerate_commands(w) if isinstance(c, Disconnect)]
            if seps:
                push(rng.choice(seps))
        elif roll < 0.96 and len(blocks) > 3:
            push(Remove(rng.choice(blocks)))
        else:
            push(Get(_weighted_kind(rng)))

    return tuple(commands[:length])


def generate_synthetic_corpus(spec: SyntheticSpec, n: int,
                              cfg: RenderConfig = DEFAULT_CONFIG) -> list[CorpusItem]:
    """Generate `n` items deterministically from the spec's seed.

    Each trajectory is the program's own interpreted drawing, with every
    point jittered by independent Gaussian noise of the configured standard
    deviation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(spec.seed)
    items = []
    for i in range(n):
        length = rng.randint(spec.min_commands, spec.max_commands)
        commands = random_session(rng, length)
        points = interpret(replay(commands), cfg)
        if spec.noise > 0:
            jitter = np.array([[rng.gauss(0, spec.noise), rng.gauss(0, spec.noise)]
                               for _ in range(len(points))])
            points = points + jitter
        items.append(CorpusItem(
            id=f"synthetic-{i:03d}",
            commands=commands,
            trajectory=points,
            metadata={"seed": spec.seed, "noise": spec.noise},
        ))
    return items
