"""Atomic probability measures and N-point sets on the unit cube.

A :class:`DiscreteMeasure` stores a materialized prefix of atoms
``(points[i], weights[i])`` sorted by non-increasing weight. Infinitely
supported measures additionally carry a ``tail`` callable that produces
further atoms on demand, and optionally a ``tail_mass`` callable giving the
exact mass beyond a prefix length. Algorithms only ever touch a finite
prefix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

PROB_TOL = 1e-12
DECAY_TOL = 1e-15

# tail(i) -> (weight, point) for the 1-based atom index i, or None once the
# generator is exhausted (e.g. weights underflow to zero).
TailFn = Callable[[int], Optional[tuple]]


class MeasureError(ValueError):
    """Raised when a measure or point set violates its invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _as_points(points, dim=None):
    pts = np.array(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1) if dim in (None, 1) else pts.reshape(-1, dim)
    if pts.ndim != 2:
        raise MeasureError("points must be a 2-D array of shape (n, d)")
    if dim is not None and pts.shape[1] != dim:
        raise MeasureError(f"points have dimension {pts.shape[1]}, expected {dim}")
    # collapse -0.0 onto 0.0 so exact comparisons behave
    pts = pts + 0.0
    pts.setflags(write=False)
    return pts


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Atomic probability measure ``sum_i w_i * delta(y_i)`` on [0, 1]^d.

    Parameters
    ----------
    points : array_like, shape (k, d)
        Atom locations of the materialized prefix.
    weights : array_like, shape (k,)
        Atom weights, strictly positive.
    tail : callable, optional
        ``tail(i)`` returns ``(weight, point)`` for 1-based indices beyond the
        stored prefix, or ``None`` when no further atoms exist. Its presence
        marks the measure as infinitely supported.
    tail_mass : callable, optional
        ``tail_mass(L)`` returns the exact total weight of atoms ``L+1, ...``.
    check : bool
        When true (the default) the weights are stably sorted non-increasing,
        finite measures whose total is within ``1e-12`` of one are divided by
        the actual sum, and any remaining violation raises
        :class:`MeasureError`. With ``check=False`` the data is stored as given,
        which is how :func:`validate_measure` diagnoses raw input.
    """

    points: np.ndarray
    weights: np.ndarray
    tail: Optional[TailFn] = field(default=None, repr=False)
    tail_mass: Optional[Callable[[int], float]] = field(default=None, repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        raw = np.asarray(self.points, dtype=float)
        if raw.ndim == 1:
            # a bare vector is one point when there is one weight, else 1-D atoms
            raw = raw.reshape(1, -1) if len(w) == 1 else raw.reshape(-1, 1)
        pts = _as_points(raw)
        if pts.shape[0] != len(w):
            raise MeasureError(f"{pts.shape[0]} points but {len(w)} weights")
        if self.check:
            if self.tail is None:
                order = np.argsort(-w, kind="stable")
                w, pts = w[order], pts[order]
                total = w.sum()
                if abs(total - 1.0) <= PROB_TOL:
                    w = w / total
            violations = _violations(pts, w, self.tail is None)
            if violations:
                raise MeasureError(violations)
        object.__setattr__(self, "points", _frozen(pts))
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def k(self) -> int:
        """Number of materialized atoms."""
        return len(self.weights)

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def alpha1(self) -> float:
        return float(self.weights[0])

    def materialize(self, K: int) -> "DiscreteMeasure":
        """Return the same measure with at least ``K`` atoms materialized.

        Fewer atoms are returned when the measure is finite or the tail
        generator is exhausted before ``K``.
        """
        if K <= self.k or self.tail is None:
            return self
        ws, ps = list(self.weights), list(self.points)
        for i in range(self.k + 1, K + 1):
            atom = self.tail(i)
            if atom is None:
                break
            w, p = atom
            ws.append(float(w))
            ps.append(np.asarray(p, dtype=float).reshape(self.dim))
        return DiscreteMeasure(np.array(ps).reshape(-1, self.dim), ws,
                               tail=self.tail, tail_mass=self.tail_mass,
                               check=False)

    def remaining_mass(self) -> float:
        """Mass not carried by the materialized prefix."""
        if self.tail is None:
            return 0.0
        if self.tail_mass is not None:
            return float(self.tail_mass(self.k))
        return max(0.0, 1.0 - float(self.weights.sum()))

    def as_finite(self) -> "DiscreteMeasure":
        """Drop the tail, keeping the prefix weights unnormalized."""
        return DiscreteMeasure(self.points, self.weights, check=False)


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered multiset of ``N`` points in [0, 1]^d with weight 1/N each."""

    points: np.ndarray

    def __post_init__(self):
        pts = _as_points(self.points)
        if pts.shape[0] < 1:
            raise MeasureError("a point set needs N >= 1 points")
        if np.any(pts < 0.0) or np.any(pts > 1.0) or not np.all(np.isfinite(pts)):
            raise MeasureError("point coordinates must lie in [0, 1]")
        object.__setattr__(self, "points", pts)

    @property
    def N(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.N

    def empirical(self) -> DiscreteMeasure:
        """Empirical measure with coincident points merged (mass count/N)."""
        uniq, counts = np.unique(self.points, axis=0, return_counts=True)
        return DiscreteMeasure(uniq, counts / self.N)


def _violations(points, weights, finite):
    out = []
    if points.shape[1] < 1:
        out.append("dimension must be >= 1")
    if len(weights) == 0:
        out.append("measure has no atoms")
        return out
    if not np.all(np.isfinite(points)) or np.any(points < 0) or np.any(points > 1):
        bad = int(np.nonzero(~np.all((points >= 0) & (points <= 1), axis=1))[0][0])
        out.append(f"atom {bad} lies outside [0,1]^d")
    nonpos = np.nonzero(~(weights > 0))[0]
    if len(nonpos):
        out.append(f"weight {int(nonpos[0])} is not strictly positive")
    total = float(weights.sum())
    if finite and abs(total - 1.0) > PROB_TOL:
        out.append(f"weights sum to {total:.12g} != 1")
    if not finite and total > 1.0 + PROB_TOL:
        out.append(f"prefix weights sum to {total:.12g} > 1")
    inc = np.nonzero(np.diff(weights) > 0)[0]
    if len(inc):
        out.append(f"weights not non-increasing at index {int(inc[0]) + 1}")
    if len(weights) > 1:
        _, idx, counts = np.unique(points, axis=0, return_index=True, return_counts=True)
        if np.any(counts > 1):
            dup = sorted(np.nonzero(~np.isin(np.arange(len(weights)), idx))[0])[0]
            out.append(f"atom {int(dup)} duplicates an earlier atom location")
    return out


def validate_measure(m: DiscreteMeasure) -> list[str]:
    """List every invariant violated by ``m``; empty when ``m`` is valid.

    Each message names the invariant and the offending (0-based) index.

    Examples
    --------
    >>> validate_measure(DiscreteMeasure([[0.1], [0.2]], [0.5, 0.6], check=False))
    ['weights sum to 1.1 != 1']
    """
    return _violations(m.points, m.weights, m.is_finite)


def truncate_renormalize(m: DiscreteMeasure, K: int) -> DiscreteMeasure:
    """Keep the first ``K`` atoms and rescale their weights to sum to one."""
    if K < 1:
        raise ValueError("K must be a positive integer")
    full = m.materialize(K)
    if full.k < K:
        raise MeasureError(
            f"truncation beyond support: K={K} but only {full.k} atoms exist")
    w = full.weights[:K]
    total = w.sum()
    if not total > 0:
        raise MeasureError("leading weights sum to zero")
    return DiscreteMeasure(full.points[:K], w / total)


def decay_check(m: DiscreteMeasure, profile, K: int) -> bool:
    """True iff ``w_k <= r_k * w_1`` for every k <= K of the sorted weights."""
    return first_decay_violation(m, profile, K) is None


def first_decay_violation(m: DiscreteMeasure, profile, K: int) -> Optional[int]:
    """1-based index of the first atom breaking the decay condition, if any."""
    full = m.materialize(K)
    w = full.weights[:K]
    ks = np.arange(1, len(w) + 1)
    r = np.array([profile.term(int(k)) for k in ks])
    bad = np.nonzero(w > r * w[0] + DECAY_TOL)[0]
    return int(bad[0]) + 1 if len(bad) else None


def random_measure(k: int, dim: int, rng: np.random.Generator,
                   avoid_corners: bool = True) -> DiscreteMeasure:
    """Random ``k``-atom measure: i.i.d. uniform atoms, sorted normalized weights.

    Weights are drawn uniform on (0, 1], sorted and normalized. With
    ``avoid_corners`` the atoms are kept off ``0`` and ``1`` in every
    coordinate, which the uniform draw already does almost surely.
    """
    pts = rng.random((k, dim))
    if avoid_corners:
        pts = np.clip(pts, 1e-9, 1 - 1e-9)
    w = 1.0 - rng.random(k)
    w = np.sort(w)[::-1]
    return DiscreteMeasure(pts, w / w.sum())
