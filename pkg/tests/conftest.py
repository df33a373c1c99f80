import numpy as np
import pytest

from discapprox import Cdf1D, DiscreteMeasure, PointSet

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_pair(rng, max_support=12, max_dim=3):
    """Two finitely supported inputs whose union support has at most ``max_support`` points.

    Supports overlap on purpose and the second input is sometimes a point set
    with repeated points.
    """
    d = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(1, max_support + 1))
    pool = rng.random((m, d))
    if rng.random() < 0.3:
        pool[0] = 0.0
    ka = int(rng.integers(1, m + 1))
    ia = rng.choice(m, ka, replace=False)
    wa = rng.random(ka) + 0.01
    a = DiscreteMeasure(pool[ia], wa / wa.sum())
    if rng.random() < 0.5:
        n = int(rng.integers(1, 9))
        b = PointSet(pool[rng.integers(0, m, n)])
    else:
        kb = int(rng.integers(1, m + 1))
        ib = rng.choice(m, kb, replace=False)
        wb = rng.random(kb) + 0.01
        b = DiscreteMeasure(pool[ib], wb / wb.sum())
    return a, b


def random_cdf(rng, atomless=False, max_knots=8):
    """Random mixed distribution function: affine pieces, flat runs and jumps."""
    M = int(rng.integers(1, max_knots + 1))
    inner = np.sort(rng.random(M - 1)) if M > 1 else np.array([])
    knots = np.unique(np.concatenate([[0.0], inner, [1.0]]))
    M = len(knots) - 1
    seg = rng.random(M) * (rng.random(M) < 0.8)
    jumps = np.zeros(M + 1)
    if not atomless:
        jumps = rng.random(M + 1) * (rng.random(M + 1) < 0.5)
    if seg.sum() + jumps.sum() == 0:
        seg[0] = 1.0
    total = seg.sum() + jumps.sum()
    seg, jumps = seg / total, jumps / total
    L = np.zeros(M + 1)
    for j in range(M):
        L[j + 1] = L[j] + jumps[j] + seg[j]
    # absorb rounding so the total is exactly one
    L[M] = 1.0 - jumps[M]
    return Cdf1D(knots, L, jumps)
