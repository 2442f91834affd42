"""The turtle block language: blocks, workspaces, and the drawing interpreter.

A workspace is an ordered list of root chains.  A chain is a tuple of blocks
connected vertically; a repeat block additionally owns a nested chain (its
body).  All values are immutable after construction, so workspaces can be
shared freely between threads and search branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

# Legal parameter domains.  Angles are clockwise degrees; 0/360 would be a
# no-op turn and is excluded.
ANGLES: tuple[int, ...] = tuple(range(30, 360, 30))
REPEAT_COUNTS: tuple[int, ...] = (2, 3, 4, 5)

MOVE = "move"
TURN = "turn"
REPEAT = "repeat"
BLOCK_KINDS = (MOVE, TURN, REPEAT)

# Defaults for freshly created blocks.
DEFAULT_ANGLE = 30
DEFAULT_COUNT = 2


@dataclass(frozen=True)
class Block:
    """One block in a workspace, labeled with a stable numeric id."""

    id: int
    kind: str
    value: int | None = None
    body: tuple["Block", ...] = ()

    def with_value(self, value: int) -> "Block":
        return replace(self, value=value)


Chain = tuple[Block, ...]


def new_block(block_id: int, kind: str) -> Block:
    if kind == MOVE:
        return Block(block_id, MOVE)
    if kind == TURN:
        return Block(block_id, TURN, DEFAULT_ANGLE)
    if kind == REPEAT:
        return Block(block_id, REPEAT, DEFAULT_COUNT)
    raise ValueError(f"unknown block kind: {kind!r}")


@dataclass(frozen=True)
class Workspace:
    """Ordered root chains plus the id counter for the next created block."""

    roots: tuple[Chain, ...] = ()
    next_id: int = 1

    def blocks(self) -> list[Block]:
        """All live blocks in workspace order (chain order, bodies inline)."""
        out: list[Block] = []

        def walk(chain: Chain) -> None:
            for b in chain:
                out.append(b)
                if b.kind == REPEAT:
                    walk(b.body)

        for chain in self.roots:
            walk(chain)
        return out

    def ids(self) -> set[int]:
        return {b.id for b in self.blocks()}

    def find(self, block_id: int) -> Block | None:
        for b in self.blocks():
            if b.id == block_id:
                return b
        return None

    def root_head_ids(self) -> set[int]:
        return {chain[0].id for chain in self.roots if chain}


EMPTY_WORKSPACE = Workspace()


@dataclass(frozen=True)
class RenderConfig:
    """Canvas parameters for interpretation and trajectory comparison."""

    move_length: float = 50.0
    sample_step: float = 5.0
    eq_tolerance: float | None = None

    @property
    def equality_tolerance(self) -> float:
        if self.eq_tolerance is not None:
            return self.eq_tolerance
        return 1e-6 * self.move_length


DEFAULT_CONFIG = RenderConfig()


def _segment_points(x0: float, y0: float, x1: float, y1: float,
                    step: float, out: list[tuple[float, float]]) -> None:
    """Append points along the segment, spaced every `step`, endpoint included.

    The start point is assumed to be present already (it is the previous
    turtle position).
    """
    dx = x1 - x0
    dy = y1 - y0
    length = math.hypot(dx, dy)
    if length == 0.0:
        return
    n = int(length / step + 1e-9)
    endpoint_hit = n >= 1 and n * step >= length - 1e-9 * length
    last_interior = n - 1 if endpoint_hit else n
    for k in range(1, last_interior + 1):
        f = k * step / length
        out.append((x0 + f * dx, y0 + f * dy))
    out.append((x1, y1))


def interpret(workspace: Workspace, cfg: RenderConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Draw a workspace and return the sampled trajectory as an (n, 2) array.

    The turtle starts at the origin heading north (+y) and executes every
    root chain in list order without resetting its pose in between.  Each
    drawn segment contributes its endpoints plus intermediate points every
    `cfg.sample_step` units of arc length; the origin is always included.
    """
    pts: list[tuple[float, float]] = [(0.0, 0.0)]
    x, y, heading = 0.0, 0.0, 0.0

    def run(chain: Chain) -> None:
        nonlocal x, y, heading
        for b in chain:
            if b.kind == MOVE:
                rad = math.radians(heading)
                nx = x + cfg.move_length * math.sin(rad)
                ny = y + cfg.move_length * math.cos(rad)
                _segment_points(x, y, nx, ny, cfg.sample_step, pts)
                x, y = nx, ny
            elif b.kind == TURN:
                heading = (heading + b.value) % 360.0
            else:
                for _ in range(b.value):
                    run(b.body)

    for chain in workspace.roots:
        run(chain)
    return np.asarray(pts, dtype=np.float64)


def trajectory_fingerprint(points: np.ndarray, cfg: RenderConfig = DEFAULT_CONFIG) -> frozenset:
    """Quantized set-of-points signature used for semantic path checking."""
    quantum = cfg.equality_tolerance
    q = np.rint(points / quantum).astype(np.int64)
    return frozenset(map(tuple, q))


def semantically_equal(p: Workspace, q: Workspace,
                       cfg: RenderConfig = DEFAULT_CONFIG,
                       tolerance: float | None = None) -> bool:
    """Whether two workspaces draw the same picture, up to a tolerance."""
    from .hausdorff import hausdorff

    if tolerance is None:
        tolerance = cfg.equality_tolerance
    return hausdorff(interpret(p, cfg), interpret(q, cfg)) <= tolerance


def register_to_origin(points: np.ndarray) -> np.ndarray:
    """Translate a drawn polyline so its first point sits at the turtle origin."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        return pts.reshape(0, 2)
    return pts - pts[0]


def densify_polyline(points: np.ndarray, step: float) -> np.ndarray:
    """Resample a polyline so consecutive samples are at most `step` apart.

    Used to bring user-drawn trajectories to the same resolution as
    interpreted ones before Hausdorff comparison.
    """
    pts = np.asarray(points, dtype=np.float64)
    if len(pts) == 0:
        return pts.reshape(0, 2)
    out: list[tuple[float, float]] = [tuple(pts[0])]
    for i in range(1, len(pts)):
        x0, y0 = pts[i - 1]
        x1, y1 = pts[i]
        _segment_points(x0, y0, x1, y1, step, out)
    return np.asarray(out, dtype=np.float64)
