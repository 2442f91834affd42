"""Command distributions for sampling search.

The probability of the next editing command factors into a bigram over
coarsened command families (Get/Remove/Connect/Change/Separate, with a
START row for the first command) and an argument model.  The uniform
argument model draws uniformly over feasible specializations; the
nonuniform model biases connect sources toward the most recently created
block and connect destinations toward the next-to-last, with strengths
fitted from a corpus.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
from dataclasses import dataclass

from .editing import (
    COMMAND_TAGS,
    TAG_CONNECT,
    TAG_START,
    ConnectInside,
    ConnectUnder,
    EditCommand,
    apply_command,
    coarsen,
    enumerate_commands,
    format_command,
)
from .lang import EMPTY_WORKSPACE, Workspace

log = logging.getLogger(__name__)

UNIFORM = "uniform"
NONUNIFORM = "nonuniform"

BigramTable = dict[str, dict[str, float]]

_ROW_LABELS = (TAG_START,) + COMMAND_TAGS


def fit_bigram(corpus) -> BigramTable:
    """Transition table over coarsened tags, Laplace-smoothed with +1 counts.

    Each item contributes one START transition to its first tag plus the
    within-sequence transitions.  Rows therefore sum to 1 and every entry is
    strictly positive, even on an empty corpus.
    """
    counts = {prev: {tag: 0 for tag in COMMAND_TAGS} for prev in _ROW_LABELS}
    for item in corpus:
        prev = TAG_START
        for command in item.commands:
            tag = coarsen(command)
            counts[prev][tag] += 1
            prev = tag
    table: BigramTable = {}
    for prev in _ROW_LABELS:
        total = sum(counts[prev].values())
        table[prev] = {tag: (counts[prev][tag] + 1) / (total + len(COMMAND_TAGS))
                       for tag in COMMAND_TAGS}
    return table


def fit_lambdas(corpus) -> tuple[float, float]:
    """Empirical connect-locality proportions.

    Replays every sequence and, at each connect command, checks whether the
    source is the most recently created live block and whether the
    destination is the second most recent.  Returns (0.5, 0.5) with a
    warning when the corpus contains no connects.
    """
    connects = 0
    source_last = 0
    dest_second = 0
    for item in corpus:
        w = EMPTY_WORKSPACE
        for command in item.commands:
            if isinstance(command, (ConnectUnder, ConnectInside)):
                live = sorted(w.ids(), reverse=True)
                connects += 1
                if live and command.source == live[0]:
                    source_last += 1
                if len(live) >= 2 and command.dest == live[1]:
                    dest_second += 1
            w = apply_command(w, command)
    if connects == 0:
        log.warning("no connect commands in corpus; using default lambdas")
        return 0.5, 0.5
    return source_last / connects, dest_second / connects


@dataclass
class CommandModel:
    """A fitted next-command distribution."""

    bigram: BigramTable
    mode: str = UNIFORM
    lambda_last: float = 0.5    # P(connect source is the last-created block)
    lambda_second: float = 0.5  # P(connect dest is the next-to-last block)
    corpus_fingerprint: str = ""

    def __post_init__(self):
        if self.mode not in (UNIFORM, NONUNIFORM):
            raise ValueError(f"unknown model mode {self.mode!r}")

    def to_json(self) -> dict:
        return {
            "bigram": {prev: dict(row) for prev, row in self.bigram.items()},
            "mode": self.mode,
            "lambda_last": self.lambda_last,
            "lambda_second": self.lambda_second,
            "corpus_fingerprint": self.corpus_fingerprint,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "CommandModel":
        return cls(
            bigram={prev: dict(row) for prev, row in doc["bigram"].items()},
            mode=doc["mode"],
            lambda_last=doc["lambda_last"],
            lambda_second=doc["lambda_second"],
            corpus_fingerprint=doc.get("corpus_fingerprint", ""),
        )

    def save(self, path) -> None:
        with open(path, "w") as f:
            json.dump(self.to_json(), f, indent=2)

    @classmethod
    def load(cls, path) -> "CommandModel":
        with open(path) as f:
            return cls.from_json(json.load(f))


def corpus_fingerprint(corpus) -> str:
    h = hashlib.sha256()
    for item in corpus:
        h.update(getattr(item, "id", "").encode())
        for c in item.commands:
            h.update(format_command(c).encode())
            h.update(b"\n")
        h.update(b"\x00")
    return h.hexdigest()


def fit_model(corpus, mode: str = UNIFORM) -> CommandModel:
    """Fit the bigram table and, for the nonuniform mode, the lambdas."""
    lam1, lam2 = fit_lambdas(corpus) if mode == NONUNIFORM else (0.5, 0.5)
    return CommandModel(
        bigram=fit_bigram(corpus),
        mode=mode,
        lambda_last=lam1,
        lambda_second=lam2,
        corpus_fingerprint=corpus_fingerprint(corpus),
    )


def uniform_model() -> CommandModel:
    """Untrained model: uniform tags (pure smoothing) and uniform arguments."""
    return fit_model([], mode=UNIFORM)


def sample_command(model: CommandModel, w: Workspace, prev: str,
                   rng: random.Random) -> EditCommand:
    """Draw one feasible command from the model, conditioned on the previous tag.

    The bigram row is renormalized over tags that have at least one feasible
    specialization in `w` (Get always qualifies, so a draw always exists).
    Deterministic for a given rng state.
    """
    groups: dict[str, list[EditCommand]] = {tag: [] for tag in COMMAND_TAGS}
    for command in enumerate_commands(w):
        groups[coarsen(command)].append(command)

    feasible = [tag for tag in COMMAND_TAGS if groups[tag]]
    weights = [model.bigram[prev][tag] for tag in feasible]
    tag = rng.choices(feasible, weights=weights, k=1)[0]

    if model.mode == NONUNIFORM and tag == TAG_CONNECT:
        return _sample_connect(model, groups[tag], w, rng)
    return rng.choice(groups[tag])


def _sample_connect(model: CommandModel, candidates: list[EditCommand],
                    w: Workspace, rng: random.Random) -> EditCommand:
    sources = sorted({c.source for c in candidates})
    newest = max(sources)
    others = [s for s in sources if s != newest]
    if others and rng.random() >= model.lambda_last:
        source = rng.choice(others)
    else:
        source = newest

    dests = sorted({c.dest for c in candidates if c.source == source})
    live = sorted(w.ids(), reverse=True)
    second_newest = live[1] if len(live) >= 2 else None
    if second_newest in dests:
        rest = [d for d in dests if d != second_newest]
        if rest and rng.random() >= model.lambda_second:
            dest = rng.choice(rest)
        else:
            dest = second_newest
    else:
        dest = rng.choice(dests)

    variants = [c for c in candidates
                if c.source == source and c.dest == dest]
    return rng.choice(variants)
