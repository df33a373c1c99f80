"""One-dimensional transport of low-discrepancy sets through a distribution function.

The distribution function of a measure on [0, 1] is taken left-continuous,
``f(a) = mu([0, a))``. Pulling a set ``v_1, ..., v_N`` back through the
generalized inverse ``x = sup{a : f(a) <= v}`` gives a set whose star
discrepancy with respect to ``mu`` is at most the Lebesgue star discrepancy
of the ``v``'s, with equality when ``mu`` has no atoms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .measure import DiscreteMeasure, PointSet
from .metrics import DistanceResult

TOL = 1e-12
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class CdfError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Cdf1D:
    """Mixed distribution function: affine between knots plus jumps at knots.

    Parameters
    ----------
    knots : array_like
        Breakpoints ``0 = t_0 < t_1 < ... < t_M = 1``.
    values_left : array_like
        ``f(t_j) = mu([0, t_j))``, the value *before* any jump at ``t_j``.
    jumps : array_like
        Point mass ``mu({t_j})``. On ``(t_j, t_{j+1}]`` the function rises
        linearly from ``values_left[j] + jumps[j]`` to ``values_left[j+1]``.
    """

    knots: np.ndarray
    values_left: np.ndarray
    jumps: np.ndarray

    def __post_init__(self):
        t = np.array(self.knots, dtype=float)
        L = np.array(self.values_left, dtype=float)
        J = np.array(self.jumps, dtype=float)
        problems = _cdf_problems(t, L, J)
        if problems:
            raise CdfError("; ".join(problems))
        for name, a in (("knots", t), ("values_left", L), ("jumps", J)):
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @classmethod
    def lebesgue(cls) -> "Cdf1D":
        return cls([0.0, 1.0], [0.0, 1.0], [0.0, 0.0])

    @classmethod
    def piecewise_linear(cls, knots, masses) -> "Cdf1D":
        """Atomless distribution with ``masses[j]`` spread uniformly on segment ``j``."""
        masses = np.asarray(masses, dtype=float)
        masses = masses / masses.sum()
        L = np.concatenate([[0.0], np.cumsum(masses)])
        L[-1] = 1.0
        return cls(knots, L, np.zeros(len(L)))

    @classmethod
    def from_atoms(cls, points, weights) -> "Cdf1D":
        """Purely atomic distribution ``sum_i w_i delta(x_i)``."""
        x = np.asarray(points, dtype=float).reshape(-1)
        w = np.asarray(weights, dtype=float).reshape(-1)
        t = np.unique(np.concatenate([[0.0, 1.0], x]))
        J = np.zeros(len(t))
        np.add.at(J, np.searchsorted(t, x), w)
        L = np.concatenate([[0.0], np.cumsum(J)[:-1]])
        return cls(t, L, J)

    @classmethod
    def from_measure(cls, m: DiscreteMeasure) -> "Cdf1D":
        if m.dim != 1:
            raise CdfError("only one-dimensional measures have a Cdf1D")
        return cls.from_atoms(m.points[:, 0], m.weights)

    @property
    def right_values(self) -> np.ndarray:
        """``f(t_j +)``: value just after the jump at each knot."""
        return self.values_left + self.jumps

    @property
    def atomless(self) -> bool:
        return bool(np.all(self.jumps == 0))

    def __call__(self, a):
        """Evaluate ``f(a) = mu([0, a))``."""
        a = np.asarray(a, dtype=float)
        t, L, R = self.knots, self.values_left, self.right_values
        j = np.clip(np.searchsorted(t, a, side="left") - 1, 0, len(t) - 2)
        frac = (a - t[j]) / (t[j + 1] - t[j])
        val = R[j] + frac * (L[j + 1] - R[j])
        # exact values on knots and at/below zero
        on_knot = np.searchsorted(t, a, side="left")
        hit = (on_knot < len(t)) & (t[np.minimum(on_knot, len(t) - 1)] == a)
        val = np.where(hit, L[np.minimum(on_knot, len(t) - 1)], val)
        val = np.where(a <= 0, 0.0, val)
        val = np.where(a > 1, 1.0, val)
        return val if val.ndim else float(val)

    def jump_at(self, a):
        """Point mass ``mu({a})``."""
        a = np.asarray(a, dtype=float)
        idx = np.minimum(np.searchsorted(self.knots, a), len(self.knots) - 1)
        out = np.where(self.knots[idx] == a, self.jumps[idx], 0.0)
        return out if out.ndim else float(out)


def _cdf_problems(t, L, J):
    out = []
    if not (t.ndim == L.ndim == J.ndim == 1 and len(t) == len(L) == len(J)):
        return ["knots, values_left and jumps must be 1-D arrays of equal length"]
    if len(t) < 2:
        return ["need at least the knots 0 and 1"]
    if t[0] != 0.0 or t[-1] != 1.0:
        out.append("knots must start at 0 and end at 1")
    if np.any(np.diff(t) <= 0):
        out.append("knots must be strictly increasing")
    if L[0] != 0.0:
        out.append("f(0) must be 0")
    if np.any(J < 0):
        out.append(f"negative jump at knot {int(np.nonzero(J < 0)[0][0])}")
    rise = L[1:] - (L[:-1] + J[:-1])
    if np.any(rise < -TOL):
        out.append(f"decreasing on segment {int(np.nonzero(rise < -TOL)[0][0])}")
    total = L[-1] + J[-1]
    if abs(total - 1.0) > TOL:
        out.append(f"total mass {total:.12g} != 1")
    return out


def generalized_inverse(f: Cdf1D, v):
    """``x = sup{a in [0, 1] : f(a) <= v}`` for ``v`` in [0, 1).

    On a flat run of ``f`` this is the right end of the run; on a jump it is
    the jump location.
    """
    v = np.asarray(v, dtype=float)
    t, L, R = f.knots, f.values_left, f.right_values
    # f(t_0), f(t_0+), f(t_1), f(t_1+), ... is non-decreasing
    Q = np.empty(2 * len(t))
    Q[0::2], Q[1::2] = L, R
    Q = np.maximum.accumulate(Q)
    idx = np.searchsorted(Q, v, side="right")
    out = np.where(idx == 0, 0.0, 1.0)
    on_jump = (idx % 2 == 1) & (idx < len(Q))
    out = np.where(on_jump, t[np.minimum(idx // 2, len(t) - 1)], out)
    seg = (idx % 2 == 0) & (idx > 0) & (idx < len(Q))
    j = np.clip(idx // 2 - 1, 0, len(t) - 2)
    lo, hi = R[j], L[j + 1]
    span = np.where(hi > lo, hi - lo, 1.0)
    x_seg = t[j] + (v - lo) * (t[j + 1] - t[j]) / span
    x_seg = np.clip(x_seg, t[j], t[j + 1])
    out = np.where(seg, x_seg, out)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Sequence1D:
    """Deterministic index-to-value rule producing points of [0, 1).

    ``kind`` is one of ``"centered"`` (the N-point set ``(2k-1)/(2N)``),
    ``"vdc"`` (van der Corput radical inverse), ``"kronecker"`` (fractional
    parts of ``k * theta``) or ``"explicit"``.
    """

    kind: str
    params: dict = field(default_factory=dict)

    @classmethod
    def centered(cls, N: int) -> "Sequence1D":
        return cls("centered", {"N": int(N)})

    @classmethod
    def van_der_corput(cls, base: int = 2) -> "Sequence1D":
        return cls("vdc", {"base": int(base)})

    @classmethod
    def kronecker(cls, theta: float = GOLDEN) -> "Sequence1D":
        return cls("kronecker", {"theta": float(theta)})

    @classmethod
    def explicit(cls, values) -> "Sequence1D":
        vals = tuple(float(v) for v in values)
        if any(not 0.0 <= v < 1.0 for v in vals):
            raise ValueError("sequence values must lie in [0, 1)")
        return cls("explicit", {"values": vals})

    def take(self, n: int) -> np.ndarray:
        """First ``n`` values."""
        if self.kind == "centered":
            N = self.params["N"]
            if n > N:
                raise ValueError(f"centered({N}) has only {N} points")
            return centered(N)[:n]
        if self.kind == "vdc":
            return van_der_corput(n, self.params["base"])
        if self.kind == "kronecker":
            return kronecker(n, self.params["theta"])
        if self.kind == "explicit":
            vals = self.params["values"]
            if n > len(vals):
                raise ValueError(f"explicit sequence has only {len(vals)} values")
            return np.array(vals[:n])
        raise ValueError(f"unknown sequence kind {self.kind!r}")


def centered(N: int) -> np.ndarray:
    k = np.arange(1, N + 1)
    return (2 * k - 1) / (2.0 * N)


def radical_inverse(idx, base: int) -> np.ndarray:
    """Digit-reversal of the integers ``idx`` in ``base``."""
    n = np.array(idx, dtype=np.int64)
    out = np.zeros(n.shape)
    scale = 1.0 / base
    while np.any(n > 0):
        n, digit = np.divmod(n, base)
        out += digit * scale
        scale /= base
    return out


def van_der_corput(N: int, base: int = 2) -> np.ndarray:
    """First ``N`` van der Corput points, starting from index 1 (1/2, 1/4, 3/4, ...)."""
    if base < 2:
        raise ValueError("base must be >= 2")
    return radical_inverse(np.arange(1, N + 1), base)


def kronecker(N: int, theta: float = GOLDEN) -> np.ndarray:
    """``frac(k * theta)`` for ``k = 1..N``."""
    k = np.arange(1, N + 1)
    return np.mod(k * theta, 1.0)


def transport(f: Cdf1D, vs, N: int) -> PointSet:
    """Pull the first ``N`` values of ``vs`` back through ``f``."""
    v = vs.take(N) if isinstance(vs, Sequence1D) else np.asarray(vs, dtype=float)[:N]
    if len(v) < N:
        raise ValueError(f"need {N} sequence values, got {len(v)}")
    return PointSet(np.asarray(generalized_inverse(f, v)).reshape(-1, 1))


def dstar_1d(f: Cdf1D, ps) -> DistanceResult:
    """Exact ``sup_{0 < b <= 1} |#{x_k < b} / N - f(b)|``.

    Between consecutive knots and points the count is constant and ``f`` is
    affine, so the supremum is one of the one-sided limits at those events:
    the value at ``b = e`` and the limit ``b -> e+`` (for ``e < 1``). The
    witness is ``{"b": e, "side": "at" | "right"}``.
    """
    x = ps.points[:, 0] if isinstance(ps, PointSet) else np.asarray(ps, dtype=float)
    x = np.sort(x)
    N = len(x)
    events = np.unique(np.concatenate([f.knots, x]))
    below = np.searchsorted(x, events, side="left") / N
    upto = np.searchsorted(x, events, side="right") / N
    f_at = f(events)
    f_right = f_at + f.jump_at(events)
    at = np.where(events > 0, np.abs(below - f_at), -1.0)
    right = np.where(events < 1, np.abs(upto - f_right), -1.0)
    i, k = int(np.argmax(at)), int(np.argmax(right))
    if at[i] >= right[k]:
        return DistanceResult(float(at[i]), {"b": float(events[i]), "side": "at"})
    return DistanceResult(float(right[k]), {"b": float(events[k]), "side": "right"})


def compare_transport(f: Cdf1D, vs, N: int):
    """Star discrepancy of the transported set w.r.t. ``f`` and of the ``v``'s w.r.t. Lebesgue.

    The first value never exceeds the second and equals it when ``f`` is atomless.
    """
    v = vs.take(N) if isinstance(vs, Sequence1D) else np.asarray(vs, dtype=float)[:N]
    mu_side = dstar_1d(f, transport(f, v, N)).value
    leb_side = dstar_1d(Cdf1D.lebesgue(), v).value
    return mu_side, leb_side
