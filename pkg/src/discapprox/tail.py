"""Approximation of infinitely supported measures through truncation.

For a measure whose sorted weights satisfy ``w_k <= r_k w_1`` for a decay
profile with gauge ``g``, keep the first

    K_N = ceil(g^{-1}(1 / (w_1 N)))

atoms, renormalize, and apply the floor allocation of
:mod:`discapprox.finite`. The resulting ``N``-point set is within total
variation ``(6 c0 + 3) g^{-1}(1 / (w_1 N)) / N`` of the full measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import exp1

from .finite import approximate_finite
from .gauge import GaugeFamily
from .measure import (DiscreteMeasure, MeasureError, first_decay_violation,
                      truncate_renormalize)
from .metrics import star_discrepancy, total_variation

# prefix atoms checked against the decay profile beyond K_N
DECAY_CHECK_MIN = 64
# prefix kept for the "actual" distances when the tail mass is not known exactly
TAIL_EPS = 1e-12
MAX_PREFIX = 200_000
# extra atoms used for the star discrepancy of the full measure
DSTAR_PREFIX_1D = 4096
DSTAR_SUPPORT_ND = 64

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DecayError(MeasureError):
    """The measure's weights do not decay as fast as the profile demands."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"decay condition w_k <= r_k w_1 fails at atom k={index}")


@dataclass(frozen=True)
class BoundReport:
    """One row of a bound verification sweep.

    ``dstar_error`` bounds how far ``actual_dstar`` can be from the star
    discrepancy against the full infinite measure (mass left out of the
    prefix it was computed on). ``K_below_N`` flags runs with ``K_N < N``.
    """

    N: int
    K_N: int
    actual_tv: float
    actual_dstar: float
    bound: float
    ratio: float
    closed_form: float = math.nan
    dstar_error: float = 0.0
    K_below_N: bool = False

    def row(self):
        return (self.N, self.K_N, self.actual_tv, self.actual_dstar, self.bound, self.ratio)


def halton_point(i: int, dim: int) -> np.ndarray:
    """The ``i``-th Halton point (``i >= 1``); never touches the cube's faces."""
    out = np.empty(dim)
    for j in range(dim):
        b, n, x, scale = _PRIMES[j], i, 0.0, 1.0 / _PRIMES[j]
        while n:
            n, digit = divmod(n, b)
            x += digit * scale
            scale /= b
        out[j] = x
    return out


def family_measure(fam: GaugeFamily, dim: int = 1, atom_rule: str = "halton",
                   points=None) -> DiscreteMeasure:
    """Infinitely supported measure with weights proportional to ``r_k``.

    ``atom_rule`` places atom ``i`` at the ``i``-th Halton point
    (``"halton"``), at ``(2^-i, ..., 2^-i)`` (``"dyadic"``) or at
    ``points[i-1]`` (``"explicit"``, which ends the support when the list
    runs out). Atoms whose weight underflows to zero end the support too.
    """
    prof = fam.profile
    tail_1 = prof.tail_beyond(1)
    if tail_1 is None:
        raise ValueError(f"family {fam.name!r} has no closed-form tail")
    Z = 1.0 + tail_1

    if atom_rule == "halton":
        def atom(i):
            return halton_point(i, dim)
    elif atom_rule == "dyadic":
        def atom(i):
            return np.full(dim, 2.0 ** -i)
    elif atom_rule == "explicit":
        pts = np.asarray(points, dtype=float).reshape(-1, dim)

        def atom(i):
            return pts[i - 1] if i <= len(pts) else None
    else:
        raise ValueError(f"unknown atom rule {atom_rule!r}")

    def tail(i):
        w = prof.term(i) / Z
        y = atom(i)
        if not w > 0 or y is None:
            return None
        return w, y

    def tail_mass(L):
        if atom_rule == "explicit" and L >= len(pts):
            return 0.0
        return prof.tail_beyond(L) / Z

    return DiscreteMeasure(atom(1).reshape(1, dim), [1.0 / Z], tail=tail,
                           tail_mass=tail_mass)


def _inverse(g, y):
    gauge = g.gauge if isinstance(g, GaugeFamily) else g
    return gauge.inverse(y)


def truncation_index(g, alpha1: float, N: int) -> int:
    """Smallest integer ``K >= g^{-1}(1 / (alpha1 N))``, at least 1.

    ``g`` may be a :class:`~discapprox.gauge.Gauge` or a ``GaugeFamily``.
    Inverse values within ``1e-9`` of an integer are taken as that integer,
    so exact cases do not overshoot through rounding.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    s = _inverse(g, 1.0 / (alpha1 * N))
    near = round(s)
    K = near if abs(s - near) <= 1e-9 else math.ceil(s)
    return max(1, int(K))


def h_function(fam: GaugeFamily, alpha1: float, N: int) -> float:
    """``g^{-1}(1 / (N alpha1)) / (2 c0 N)``; at most 1/2 for a valid gauge."""
    return _inverse(fam, 1.0 / (N * alpha1)) / (2.0 * fam.c0 * N)


def generic_bound(fam: GaugeFamily, alpha1: float, N: int) -> float:
    """``(6 c0 + 3) g^{-1}(1 / (N alpha1)) / N``."""
    return (6.0 * fam.c0 + 3.0) * _inverse(fam, 1.0 / (N * alpha1)) / N


def bound_curve(fam: GaugeFamily, alpha1: float, Ns):
    """``(N, generic bound, closed-form rate)`` for each ``N``.

    The closed form is the family's explicit rate (``nan`` for custom
    families); it always dominates the generic bound.
    """
    out = []
    for N in Ns:
        if N < 2:
            raise ValueError("N must be >= 2")
        cf = fam.closed_form(N) if fam.closed_form is not None else math.nan
        out.append((int(N), generic_bound(fam, alpha1, N), cf))
    return out


def tail_integral_check(r: float, m: int) -> bool:
    """Numerically confirm the double-exponential gauge dominates its tail.

    Checks ``sum_{k=m+1}^{m+60} r^(e^k) <= r^(e^m)``, the exponential
    integral bound ``E1(a) < e^-a log(1 + 1/a)`` at ``a = |log r| e^m`` and
    ``1 + 1/a < e``.
    """
    if not 0 < r < 0.5 or m < 1:
        raise ValueError("need 0 < r < 1/2 and m >= 1")
    lr = abs(math.log(r))
    tail = math.fsum(math.exp(-lr * math.exp(k)) for k in range(m + 1, m + 61)
                     if k < 700)
    a = lr * math.exp(m)
    g_m = math.exp(-a)
    integral_ok = exp1(a) < math.exp(-a) * math.log1p(1.0 / a) or g_m == 0.0
    return bool(tail <= g_m and integral_ok and 1.0 + 1.0 / a < math.e)


def _prefix_for_tail(m: DiscreteMeasure, K: int, eps: float = TAIL_EPS,
                     cap: int = MAX_PREFIX) -> DiscreteMeasure:
    """Materialize at least ``K`` atoms and, without a tail-mass formula, enough
    that the leftover mass drops below ``eps``."""
    full = m.materialize(K)
    if full.tail_mass is not None or full.is_finite:
        return full
    L = max(K, 2 * full.k)
    while full.remaining_mass() >= eps and L <= cap:
        more = full.materialize(L)
        if more.k == full.k:
            break
        full, L = more, 2 * L
    return full


def measure_distances(m: DiscreteMeasure, ps, K: int):
    """Total variation and star discrepancy between the full measure and ``ps``.

    Atoms of ``ps`` are assumed to lie among the first ``K`` atoms or off the
    support, so the total variation is exact: the prefix part plus the mass
    left out of the prefix. Returns ``(tv, dstar, dstar_error)``.
    """
    pre = _prefix_for_tail(m, K)
    tv = min(1.0, total_variation(pre, ps).value + pre.remaining_mass())
    if m.dim == 1:
        dpre = _prefix_for_tail(m, max(pre.k, DSTAR_PREFIX_1D), cap=DSTAR_PREFIX_1D)
        if dpre.k < pre.k:
            dpre = pre
        ds = star_discrepancy(dpre, ps).value
    else:
        n_extra = max(0, DSTAR_SUPPORT_ND - K - 2)
        dpre = m.materialize(K + n_extra)
        dpre = DiscreteMeasure(dpre.points[:K + n_extra], dpre.weights[:K + n_extra],
                               tail=dpre.tail, tail_mass=dpre.tail_mass, check=False)
        ds = star_discrepancy(dpre, ps, max_dim=None, max_support=None).value
    return tv, ds, dpre.remaining_mass()


def approximate_infinite(m: DiscreteMeasure, fam: GaugeFamily, N: int):
    """Truncate, renormalize and allocate ``N`` points; report distances and bound.

    Returns
    -------
    points : PointSet
    report : BoundReport

    Raises
    ------
    DecayError
        If a materialized weight violates ``w_k <= r_k w_1``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    alpha1 = m.alpha1
    K_N = truncation_index(fam, alpha1, N)
    bad = first_decay_violation(m, fam.profile, max(K_N, DECAY_CHECK_MIN))
    if bad is not None:
        raise DecayError(bad)
    available = m.materialize(K_N).k
    mu_K = truncate_renormalize(m, min(K_N, available))
    ps, _, _ = approximate_finite(mu_K, N)
    tv, ds, ds_err = measure_distances(m, ps, K_N)
    bound = generic_bound(fam, alpha1, N)
    closed = fam.closed_form(N) if fam.closed_form is not None else math.nan
    ratio = tv / bound if bound > 0 else math.inf
    report = BoundReport(N, K_N, tv, ds, bound, ratio, closed, ds_err, K_N < N)
    return ps, report
