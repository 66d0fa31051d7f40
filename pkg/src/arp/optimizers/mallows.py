"""Mallows model machinery for the update-based estimation-of-distribution
optimizer: expectation/dispersion conversion, sampling, weighted Borda
consensus, and the target-distance schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..permutation import compose, inverse

_THETA_EPS = 1e-12
_BISECT_TOL = 1e-10


def expected_kendall(n: int, theta: float) -> float:
    """E[Kendall distance to the center] under Mallows dispersion theta.

    E[D | theta] = n/(e^theta - 1) - sum_{j=1..n} j/(e^{j theta} - 1);
    the theta -> 0 limit is the uniform expectation n(n-1)/4.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if theta < 0.0:
        raise ValueError("theta must be >= 0")
    if theta < 1e-6:
        # closed form cancels catastrophically near 0; Taylor in theta
        s2 = sum(j * j - 1 for j in range(2, n + 1))
        s4 = sum(j ** 4 - 1 for j in range(2, n + 1))
        return n * (n - 1) / 4.0 - theta * s2 / 12.0 + theta ** 3 * s4 / 720.0
    total = n / math.expm1(theta)
    for j in range(1, n + 1):
        total -= j / math.expm1(j * theta)
    return total


def theta_for_target(n: int, d_target: float) -> float:
    """Dispersion theta whose expected Kendall distance equals d_target.

    Solved by bisection to 1e-10; E[D|theta] is strictly decreasing in theta
    from n(n-1)/4 (theta=0) toward 0.
    """
    d_max = n * (n - 1) / 4.0
    if not 0.0 < d_target <= d_max:
        raise ValueError(f"d_target must be in (0, {d_max}], got {d_target}")
    lo = _THETA_EPS
    if expected_kendall(n, lo) <= d_target:
        return lo
    hi = 1.0
    while expected_kendall(n, hi) > d_target:
        hi *= 2.0
        if hi > 1e6:
            raise RuntimeError("failed to bracket theta")
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if expected_kendall(n, mid) > d_target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class MallowsState:
    """Center permutation, dispersion, and the sampling iteration index."""

    sigma0: tuple
    theta: float
    iteration: int = 0

    def __post_init__(self):
        if self.theta < 0.0:
            raise ValueError("theta must be >= 0")


def _truncated_geometric(u: float, q: float, k: int) -> int:
    # smallest r in 0..k-1 with CDF(r) >= u, where P(r) proportional to q^r
    val = 1.0 - u * (1.0 - q ** k)
    if val <= 0.0:
        return k - 1
    r = math.ceil(math.log(val) / math.log(q) - 1.0)
    return min(max(int(r), 0), k - 1)


def mallows_sample(state: MallowsState, rng: np.random.Generator) -> tuple:
    """One draw from P(sigma) proportional to exp(-theta d(sigma, sigma0)).

    Uses the repeated-insertion decomposition: inversion digits r_j are
    independent truncated geometrics, the decoded permutation pi has
    inversion count sum(r_j), and sigma = pi composed with sigma0 sits at
    Kendall distance sum(r_j) from sigma0.
    """
    sigma0 = state.sigma0
    n = len(sigma0)
    if state.theta < _THETA_EPS:
        return compose(tuple(int(x) for x in rng.permutation(n)), sigma0)
    q = math.exp(-state.theta)
    items = list(range(n))
    out = []
    for j in range(n - 1):
        r = _truncated_geometric(rng.random(), q, n - j)
        out.append(items.pop(r))
    out.append(items[0])
    return compose(tuple(out), sigma0)


def weighted_borda(perms: Sequence[Sequence[int]],
                   weights: Sequence[float]) -> tuple:
    """Weighted-mean permutation: items ranked by weight-averaged position.

    Input tuples are read the same way the Kendall metric reads them, as
    position vectors (entry j is where item j sits), so the average is
    componentwise and the output assigns each item the rank of its average.
    That keeps the consensus in the same space the Mallows sampler
    concentrates in: borda(samples near sigma0) recovers sigma0.
    Ties in average position break toward the lower item index.
    """
    if len(perms) != len(weights):
        raise ValueError("perms and weights must have equal counts")
    if not perms:
        raise ValueError("need at least one permutation")
    w = [float(x) for x in weights]
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    total = math.fsum(w)
    if total <= 0.0:
        raise ValueError("weights must not all be zero")
    n = len(perms[0])
    avg = [0.0] * n
    for p, wi in zip(perms, w):
        if len(p) != n:
            raise ValueError("permutations have different lengths")
        for item in range(n):
            avg[item] += wi * p[item]
    order = sorted(range(n), key=lambda item: (avg[item], item))
    out = [0] * n
    for rank, item in enumerate(order):
        out[item] = rank
    return tuple(out)


def umm_distance_schedule(n: int, iterations: int) -> list:
    """Target expected distances d_1..d_K for the sampling iterations.

    Decreases linearly from n(n-1)/8 (half the uniform expectation) at the
    first iteration to 1 at the last.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    d_first = n * (n - 1) / 8.0
    if iterations == 1:
        return [d_first]
    step = (1.0 - d_first) / (iterations - 1)
    return [d_first + step * k for k in range(iterations)]
