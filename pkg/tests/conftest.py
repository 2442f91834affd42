import random

import numpy as np
import pytest

from turtlesynth.corpus import random_session
from turtlesynth.editing import replay
from turtlesynth.lang import (
    ANGLES,
    DEFAULT_CONFIG,
    MOVE,
    REPEAT,
    REPEAT_COUNTS,
    TURN,
    Block,
    Workspace,
)


def random_workspace(rng: random.Random, max_commands: int = 12) -> Workspace:
    """A random valid workspace reached by a feasible editing session."""
    return replay(random_session(rng, rng.randint(1, max_commands)))


def random_point_set(rng: random.Random, max_points: int = 200,
                     lo: float = -500.0, hi: float = 500.0) -> np.ndarray:
    n = rng.randint(1, max_points)
    return np.array([[rng.uniform(lo, hi), rng.uniform(lo, hi)]
                     for _ in range(n)])


def random_statement_chain(rng: random.Random, depth: int,
                           max_len: int = 4, _counter=None) -> tuple[Block, ...]:
    """A random block chain with repeat nesting up to `depth` levels."""
    if _counter is None:
        _counter = [0]
    chain = []
    for _ in range(rng.randint(1, max_len)):
        _counter[0] += 1
        kind = rng.choice([MOVE, MOVE, TURN, REPEAT] if depth > 0
                          else [MOVE, MOVE, TURN])
        if kind == MOVE:
            chain.append(Block(_counter[0], MOVE))
        elif kind == TURN:
            chain.append(Block(_counter[0], TURN, rng.choice(ANGLES)))
        else:
            body = random_statement_chain(rng, depth - 1, max_len, _counter)
            chain.append(Block(_counter[0], REPEAT, rng.choice(REPEAT_COUNTS),
                               body))
    return tuple(chain)


def random_program(rng: random.Random, depth: int = 3) -> Workspace:
    counter = [0]
    roots = tuple(random_statement_chain(rng, depth, _counter=counter)
                  for _ in range(rng.randint(1, 2)))
    return Workspace(roots, counter[0] + 1)


@pytest.fixture
def cfg():
    return DEFAULT_CONFIG
