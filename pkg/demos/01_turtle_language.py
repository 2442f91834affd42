"""Tour of the block language: build a program by editing commands, then draw it.

A workspace starts empty; six editing commands create blocks, snap them
together, and tweak their values.  Interpreting the workspace produces a
densely sampled pen trajectory starting at the origin, heading north.
"""

import numpy as np

from turtlesynth import (
    Change,
    ConnectInside,
    ConnectUnder,
    Get,
    format_command,
    interpret,
    replay,
)

# Reproduce a classic editor session: a repeat block with a move and a
# 120-degree turn nested inside it, i.e. a triangle drawn twice around.
session = [
    Get("repeat"),
    Get("move"),
    ConnectInside(2, 1),
    Get("turn"),
    ConnectUnder(3, 2),
    Change(3, 30, 120),
]

print("The editing session, in its textual form:")
for command in session:
    print("   ", format_command(command))

workspace = replay(session)
print("\nResulting workspace:", workspace.roots)

trajectory = interpret(workspace)
print(f"\nTrajectory has {len(trajectory)} samples spaced 5 units apart.")
print("First few points:")
print(np.round(trajectory[:4], 3))
print("Last point:", np.round(trajectory[-1], 3))

# Make it a full triangle by bumping the repeat count from its default 2 to 3.
closed = replay([Change(1, 2, 3)], workspace)
pts = interpret(closed)
gap = np.linalg.norm(pts[-1] - pts[0])
print(f"\nAfter 'change 2 in 1 to 3' the pen returns home (gap {gap:.2e}).")
