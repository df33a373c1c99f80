"""
Transporting low-discrepancy points through a distribution function
===================================================================

In one dimension a uniform sequence pulled back through the generalized
inverse of F keeps (or improves) its star discrepancy.
"""

# %%
import numpy as np

from discapprox import (Cdf1D, PointSet, Sequence1D, centered, compare_transport,
                        dstar_1d, transport, van_der_corput)

two_atoms = Cdf1D.from_atoms([0.0, 0.5], [0.5, 0.5])
print(transport(two_atoms, Sequence1D.centered(4), 4).points.ravel())
print(compare_transport(two_atoms, Sequence1D.centered(4), 4))

# %% [markdown]
# Atoms can only help: the transported set matches the two atoms exactly,
# while the centered set is 1/8 away from Lebesgue measure.

# %%
mixed = Cdf1D(np.array([0.0, 0.3, 0.6, 1.0]), np.array([0.0, 0.2, 0.55, 0.8]),
              np.array([0.0, 0.1, 0.0, 0.2]))
for N in (5, 50, 500):
    for name, vs in (("centered", Sequence1D.centered(N)),
                     ("vdc", Sequence1D.van_der_corput(2)),
                     ("kronecker", Sequence1D.kronecker())):
        mu, leb = compare_transport(mixed, vs, N)
        print(f"N={N:4d} {name:9s} mu={mu:.5f} lebesgue={leb:.5f}")

# %%
# Alternating points on the two atoms: 1/(2N) for odd N, 0 for even N.
for N in range(1, 8):
    x = PointSet(np.where(np.arange(N) % 2 == 0, 0.0, 0.5)[:, None])
    print(N, dstar_1d(two_atoms, x).value)

# %%
leb = Cdf1D.lebesgue()
for e in (4, 8, 12):
    N = 2 ** e
    print(N, N * dstar_1d(leb, van_der_corput(N)).value, N * dstar_1d(leb, centered(N)).value)
