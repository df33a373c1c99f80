"""
Infinitely supported measures: truncate, then allocate
=======================================================

A decay gauge g picks how many atoms to keep for a given N. The kept prefix
is renormalized and handed to the finite construction.
"""

# %%
import math

from discapprox import (approximate_infinite, bound_curve, double_exponential, geometric,
                        polynomial)
from discapprox.tail import family_measure

fam = geometric(0.5)
m = family_measure(fam, dim=1, atom_rule="dyadic")
ps, rep = approximate_infinite(m, fam, 8)
print(sorted(ps.points.ravel()))
print(rep)

# %% [markdown]
# Geometric weights give a log(N)/N rate. The measured total variation sits
# well below both the generic bound and the closed form.

# %%
for r in (0.3, 0.5, 0.8):
    fam = geometric(r)
    m = family_measure(fam, 1)
    print(f"r={r}")
    for N in (10, 100, 1000, 10000):
        _, rep = approximate_infinite(m, fam, N)
        print(f"  N={N:6d} K_N={rep.K_N:3d} tv={rep.actual_tv:.2e} "
              f"bound={rep.bound:.2e} closed={rep.closed_form:.2e}")

# %%
# Double-exponential decay needs only a handful of atoms.
fam = double_exponential(0.4)
m = family_measure(fam, 1)
for N in (10, 1000, 100000):
    _, rep = approximate_infinite(m, fam, N)
    print(N, rep.K_N, f"{rep.actual_tv:.2e}", f"{rep.bound:.2e}")

# %%
# Quadratic decay: the gauge keeps about alpha1 * N atoms and the bound is a constant.
fam = polynomial()
m = family_measure(fam, 1)
for N, gen, _ in bound_curve(fam, m.alpha1, [10, 100, 1000]):
    print(N, round(gen, 4), math.ceil(m.alpha1 * N))
