"""N-point approximation of a k-atom measure by floor allocation.

Each atom ``y_i`` receives ``p_i = floor(N * w_i)`` points; the ``r = N - sum p_i``
left over (always ``r < k``) go to the origin and to the opposite corner
``(1, ..., 1)``. This guarantees total variation at most ``2k / N`` and star
discrepancy at most ``k / (2N)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measure import DiscreteMeasure, PointSet


@dataclass(frozen=True)
class AllocationPlan:
    """How many of the ``N`` points go to each atom and to the two corners."""

    counts: tuple
    remainder: int
    origin_count: int
    corner_count: int

    @property
    def N(self) -> int:
        return sum(self.counts) + self.origin_count + self.corner_count


def allocate(m: DiscreteMeasure, N: int) -> AllocationPlan:
    """Floor allocation of ``N`` points to the atoms of a finite measure.

    For ``N < k`` no atom receives points: ``ceil(N/2)`` go to the origin and
    ``floor(N/2)`` to the corner. Otherwise ``p_i = floor(N w_i)`` and the
    remainder ``r`` is split ``ceil(r/2)`` / ``floor(r/2)`` the same way.

    Examples
    --------
    >>> m = DiscreteMeasure([[0.2], [0.5], [0.7]], [1/2, 1/3, 1/6])
    >>> allocate(m, 4)
    AllocationPlan(counts=(2, 1, 0), remainder=1, origin_count=1, corner_count=0)
    """
    if not m.is_finite:
        raise ValueError("allocate needs a finitely supported measure")
    if N < 1:
        raise ValueError("N must be >= 1")
    k = m.k
    if N < k:
        return AllocationPlan((0,) * k, N, (N + 1) // 2, N // 2)
    p = np.floor(N * m.weights).astype(np.int64)
    r = N - int(p.sum())
    # float products can land one ulp short of an integer; r stays in [0, k)
    while r < 0:
        i = int(np.argmax(p))
        p[i] -= 1
        r += 1
    assert r < k, "floor allocation left a remainder >= k"
    return AllocationPlan(tuple(int(x) for x in p), r, (r + 1) // 2, r // 2)


def realize(m: DiscreteMeasure, plan: AllocationPlan) -> PointSet:
    """Expand a plan into points: atom blocks in order, then origin, then corner."""
    d = m.dim
    blocks = [np.repeat(m.points[i:i + 1], c, axis=0)
              for i, c in enumerate(plan.counts) if c]
    blocks.append(np.zeros((plan.origin_count, d)))
    blocks.append(np.ones((plan.corner_count, d)))
    return PointSet(np.concatenate(blocks).reshape(-1, d))


def approximate_finite(m: DiscreteMeasure, N: int):
    """Approximate a ``k``-atom measure by ``N`` points.

    Returns
    -------
    points : PointSet
    tv_bound : float
        ``2k / N``.
    dstar_bound : float
        ``(k / 2) / N``.
    """
    plan = allocate(m, N)
    return realize(m, plan), 2.0 * m.k / N, 0.5 * m.k / N

