"""Decay profiles ``(r_k)`` and their gauge functions.

A gauge ``g`` is a strictly decreasing function on ``[1, inf)`` with
``g(s) <= c0 / s`` that dominates the tail of the decay sequence. The tail
convention used throughout is the one the truncation argument consumes:

    sum_{k > M} r_k <= g(M)        for integers M >= 1,

i.e. ``g(M)`` bounds the mass *strictly beyond* index ``M``. With this
convention the geometric identity ``sum_{k > K} r^(k-1) = r^K / (1 - r)`` is
exact.

The three built-in families have closed-form inverses that are valid on the
analytic extension of ``g`` below ``s = 1``; :class:`Gauge` for custom
families inverts by bisection on ``[1, inf)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import zeta

__all__ = [
    "DecayProfile", "Gauge", "GaugeFamily",
    "geometric", "double_exponential", "polynomial", "custom",
]


@dataclass(frozen=True)
class DecayProfile:
    """Decay sequence ``r_1 = 1, r_2, ...`` with tail constant ``c0``.

    ``tail_beyond(M)`` returns ``sum_{k > M} r_k`` (closed form for the
    built-in families, ``None`` if unknown).
    """

    family: str
    params: dict
    c0: float
    _term: Callable[[int], float] = field(repr=False)
    _tail_beyond: Optional[Callable[[int], float]] = field(default=None, repr=False)

    def term(self, k: int) -> float:
        if k < 1:
            raise ValueError("decay terms are indexed from 1")
        return float(self._term(k))

    def terms(self, K: int) -> np.ndarray:
        return np.array([self.term(k) for k in range(1, K + 1)])

    def tail_beyond(self, M: int) -> Optional[float]:
        if self._tail_beyond is None:
            return None
        return float(self._tail_beyond(M))


@dataclass(frozen=True)
class Gauge:
    """Strictly decreasing gauge ``g`` with its inverse and constant ``c0``."""

    forward: Callable[[float], float] = field(repr=False)
    c0: float
    _inverse: Optional[Callable[[float], float]] = field(default=None, repr=False)
    # open interval of y-values accepted by the inverse
    inverse_range: tuple = (0.0, math.inf)

    def __call__(self, s):
        return self.forward(s)

    def inverse(self, y: float) -> float:
        lo, hi = self.inverse_range
        if not (lo < y < hi):
            raise ValueError(
                f"gauge inverse undefined at {y!r}: argument must lie in ({lo}, {hi})")
        if self._inverse is not None:
            return float(self._inverse(y))
        return _bisect_inverse(self.forward, y)


def _bisect_inverse(g, y, tol=1e-12):
    """Solve ``g(s) = y`` on ``[1, inf)`` for a strictly decreasing ``g``."""
    lo, hi = 1.0, 2.0
    if g(lo) < y:
        raise ValueError(
            f"gauge inverse undefined at {y!r}: argument must lie in (0, {g(1.0)}]")
    while g(hi) > y:
        lo, hi = hi, 2.0 * hi
        if hi > 1e300:
            raise ValueError(f"gauge inverse undefined at {y!r}: no crossing found")
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if g(mid) > y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GaugeFamily:
    """A decay profile bundled with its gauge and the matching closed-form rate.

    ``closed_form(N)`` is the family's explicit rate in ``N`` (``None`` for a
    custom family); ``bound_constant`` is its leading constant.
    """

    name: str
    params: dict
    profile: DecayProfile
    gauge: Gauge
    closed_form: Optional[Callable[[float], float]] = field(default=None, repr=False)
    bound_constant: Optional[float] = None

    @property
    def c0(self) -> float:
        return self.gauge.c0

    @property
    def r(self) -> Optional[float]:
        return self.params.get("r")


def geometric(r: float) -> GaugeFamily:
    """``r_k = r^(k-1)``, ``g(s) = r^s / (1-r)``, ``c0 = -1 / (e ln(r) (1-r))``.

    The closed-form rate is ``c_r log(N) / N`` with
    ``c_r = (6 c0 + 3) * (log 2 - log(1-r)) / (-log(r) log 2)``.
    """
    if not 0 < r < 1:
        raise ValueError("geometric decay needs 0 < r < 1")
    lr = math.log(r)
    c0 = -1.0 / (math.e * lr * (1 - r))
    c_tilde = (math.log(2) - math.log(1 - r)) / (-lr * math.log(2))
    c_r = (6 * c0 + 3) * c_tilde
    profile = DecayProfile(
        "geometric", {"r": r}, c0,
        lambda k: r ** (k - 1),
        lambda M: r ** M / (1 - r),
    )
    gauge = Gauge(
        lambda s: r ** s / (1 - r), c0,
        lambda y: math.log(y * (1 - r)) / lr,
    )
    return GaugeFamily("geometric", {"r": r, "c_tilde": c_tilde}, profile, gauge,
                       lambda N: c_r * math.log(N) / N, c_r)


def double_exponential(r: float) -> GaugeFamily:
    """``r_k = r^(e^k) / r^e``, ``g(s) = r^(e^s)``, ``c0 = r^e``, ``0 < r < 1/2``.

    The closed-form rate is ``(6 r^e + 3) log(log(N) / |log r|) / N``.
    """
    if not 0 < r < 0.5:
        raise ValueError("double-exponential decay needs 0 < r < 1/2")
    lr = math.log(r)
    c0 = r ** math.e
    c_r = 6 * c0 + 3

    def term(k):
        # r^(e^k - e) in log space; underflows cleanly to 0.0
        return math.exp(lr * (math.exp(k) - math.e)) if k < 700 else 0.0

    def tail_beyond(M):
        return math.fsum(term(k) for k in range(M + 1, M + 61))

    profile = DecayProfile("doubleexp", {"r": r}, c0, term, tail_beyond)
    gauge = Gauge(
        lambda s: math.exp(lr * math.exp(s)) if s < 700 else 0.0, c0,
        lambda y: math.log(math.log(y) / lr),
        inverse_range=(0.0, 1.0),
    )
    return GaugeFamily("doubleexp", {"r": r}, profile, gauge,
                       lambda N: c_r * math.log(math.log(N) / abs(lr)) / N, c_r)


def polynomial() -> GaugeFamily:
    """``r_k = 1/k^2``, ``g(s) = 1/s``, ``c0 = 1``; yields only a constant bound 9."""
    profile = DecayProfile(
        "polynomial", {}, 1.0,
        lambda k: 1.0 / (k * k),
        lambda M: float(zeta(2.0, M + 1)),
    )
    gauge = Gauge(lambda s: 1.0 / s, 1.0, lambda y: 1.0 / y)
    return GaugeFamily("polynomial", {}, profile, gauge, lambda N: 9.0, 9.0)


def custom(forward, c0, inverse=None, terms=None, tail_beyond=None,
           name="custom") -> GaugeFamily:
    """Family from a user gauge; ``terms`` may be a callable or a finite table.

    Without ``inverse`` the gauge is inverted by bisection to ``1e-12``.
    """
    if terms is None:
        term = None
    elif callable(terms):
        term = terms
    else:
        table = [float(t) for t in terms]

        def term(k):
            return table[k - 1] if k <= len(table) else 0.0

        if tail_beyond is None:
            def tail_beyond(M):
                return math.fsum(table[M:])

    profile = DecayProfile(name, {}, c0, term if term else (lambda k: math.nan),
                           tail_beyond)
    gauge = Gauge(forward, c0, inverse)
    return GaugeFamily(name, {}, profile, gauge)
