"""Why search uses a thresholded distance check instead of the exact value.

During search we rarely need the exact Hausdorff distance between a
candidate drawing and the target stroke -- we only need to know whether it
beats the incumbent.  The thresholded check walks the point sets in chunks
and bails out as soon as one point is provably too far away, which is much
cheaper than the full distance matrix when the answer is "no".
"""

import time

import numpy as np

from turtlesynth import hausdorff, hausdorff_below

rng = np.random.default_rng(0)


def timed(fn, repeats=200):
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


x = rng.uniform(-500, 500, size=(2000, 2))
y = x + rng.normal(scale=2.0, size=x.shape)  # a near miss
z = rng.uniform(2000, 3000, size=(2000, 2))  # hopeless candidate

d_near = hausdorff(x, y)
d_far = hausdorff(x, z)
print(f"near-miss distance {d_near:.2f}, hopeless distance {d_far:.2f}")

alpha = 50.0
t_exact = timed(lambda: hausdorff(x, z) < alpha)
t_thresh = timed(lambda: hausdorff_below(x, z, alpha))
print(f"reject a hopeless candidate: exact {t_exact * 1e3:.2f} ms, "
      f"thresholded {t_thresh * 1e3:.3f} ms "
      f"({t_exact / t_thresh:.0f}x faster)")

# The check is exact, not approximate: agreement on random thresholds.
mismatches = 0
for _ in range(200):
    a = rng.uniform(1, 3000)
    if hausdorff_below(x, z, a) != (d_far < a):
        mismatches += 1
print(f"agreement with the exact comparison: {200 - mismatches}/200")
