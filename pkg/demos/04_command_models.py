"""Fit a model of how people edit, then sample plausible editing commands.

The model has two parts: a bigram table over coarse command families
(what kind of edit tends to follow what), and a pair of locality weights
for connect commands (people overwhelmingly snap the block they just
created onto the one they made right before it).  Both are estimated from
a corpus of editing sessions by counting.
"""

import random
from collections import Counter

from turtlesynth import (
    SyntheticSpec,
    coarsen,
    fit_model,
    generate_synthetic_corpus,
    replay,
    sample_command,
)

corpus = generate_synthetic_corpus(SyntheticSpec(seed=4, noise=2.0), 100)
model = fit_model(corpus, mode="nonuniform")

print("What follows a Get?  (smoothed bigram row)")
for tag, p in sorted(model.bigram["Get"].items(), key=lambda kv: -kv[1]):
    print(f"    {tag:<10s} {p:.3f}")

print(f"\nconnect locality: source is the newest block with "
      f"p={model.lambda_last:.2f}, destination is the next-newest with "
      f"p={model.lambda_second:.2f}")

# Roll the model forward from a small workspace and tally what it proposes.
w = replay(corpus[0].commands[:5])
rng = random.Random(0)
tally = Counter(coarsen(sample_command(model, w, "Get", rng))
                for _ in range(2000))
print("\n2000 proposals from a 5-command-old workspace, after a Get:")
for tag, n in tally.most_common():
    print(f"    {tag:<10s} {n}")
