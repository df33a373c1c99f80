"""
Approximating a finitely supported measure by N points
======================================================

Floor allocation puts floor(N w_i) copies on atom i and parks the few
leftover points at the two opposite corners of the cube.
"""

# %%
import numpy as np

from discapprox import (DiscreteMeasure, allocate, approximate_finite, random_measure,
                        realize, star_discrepancy, total_variation)

m = DiscreteMeasure([[0.2], [0.5], [0.7]], [1 / 2, 1 / 3, 1 / 6])
plan = allocate(m, 4)
print(plan)
print(realize(m, plan).points.ravel())

# %% [markdown]
# With 4 points the third atom gets nothing and the single leftover goes to 0.
# The guarantees are 2k/N for total variation and k/(2N) for star discrepancy.

# %%
for N in (4, 10, 100, 1000):
    ps, tvb, dsb = approximate_finite(m, N)
    print(f"N={N:5d}  tv={total_variation(m, ps).value:.4f} <= {tvb:.4f}"
          f"  dstar={star_discrepancy(m, ps).value:.4f} <= {dsb:.4f}")

# %%
# A random 2-D measure with 12 atoms; ratios stay below one.
rng = np.random.default_rng(0)
m2 = random_measure(12, 2, rng)
for N in (8, 50, 400, 3000):
    ps, tvb, dsb = approximate_finite(m2, N)
    print(N, round(total_variation(m2, ps).value / tvb, 3),
          round(star_discrepancy(m2, ps).value / dsb, 3))
