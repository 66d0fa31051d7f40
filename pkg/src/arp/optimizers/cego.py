"""Surrogate-assisted combinatorial optimizer: a Gaussian process over the
normalized Kendall distance, refit after every true evaluation, with a
permutation GA maximizing expected improvement to pick the next candidate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import cho_solve, cholesky
from scipy.special import ndtr

log = logging.getLogger(__name__)

# log-grid for the kernel length-scale fit: 2^-6 .. 2^8 in half-octave steps
_THETA_GRID = tuple(2.0 ** (0.5 * k) for k in range(-12, 17))

_GA_POP = 20
_GA_GENERATIONS = 499  # 20 init + 499*20 offspring = 1e4 surrogate evals
_TOURNAMENT_WIN_P = 0.9
_CROSSOVER_P = 0.5

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class SurrogateFitError(RuntimeError):
    """The GP could not be fit on the current evaluations."""


@dataclass
class SurrogateState:
    """Evaluated permutations and regularization for a surrogate fit."""

    perms: tuple  # evaluated permutations, optimizer space
    y: tuple  # objective values, parallel to perms
    noise_floor: float = 1e-8
    kernel_theta: Optional[float] = None  # set by the most recent fit

    def __post_init__(self):
        if len(self.perms) != len(self.y):
            raise ValueError("perms and y must have equal counts")
        if self.noise_floor <= 0.0:
            raise ValueError("noise_floor must be positive")


def _sign_matrix(perms: np.ndarray, iu: np.ndarray, iv: np.ndarray) -> np.ndarray:
    # row p -> sign(p[u] - p[v]) over position pairs u < v; two such rows
    # give kendall(p, q) = (n(n-1)/2 - dot) / 2. Entries are +-1 and pair
    # counts stay far below 2**24, so float32 dot products are exact.
    return np.sign(perms[:, iu] - perms[:, iv]).astype(np.float32)


def expected_improvement(mean, sd, best_f):
    """EI of a minimization candidate under a Gaussian posterior.

    EI = (best_f - mean) Phi(z) + sd phi(z) with z = (best_f - mean)/sd;
    degenerates to max(best_f - mean, 0) at sd = 0. Vectorizes over numpy
    arrays; scalars in, scalar out.
    """
    mean_a = np.asarray(mean, dtype=np.float64)
    sd_a = np.asarray(sd, dtype=np.float64)
    imp = best_f - mean_a
    positive = sd_a > 0.0
    z = np.where(positive, imp / np.where(positive, sd_a, 1.0), 0.0)
    phi = _INV_SQRT_2PI * np.exp(-0.5 * z * z)
    ei = np.where(positive, imp * ndtr(z) + sd_a * phi, np.maximum(imp, 0.0))
    if np.isscalar(mean) and np.isscalar(sd):
        return float(ei)
    return ei


class GPSurrogate:
    """Fitted constant-mean GP with kernel exp(-theta d/dmax)."""

    def __init__(self, kernel_theta: float, nugget: float, beta: float,
                 sigma2: float, s_train: np.ndarray, alpha: np.ndarray,
                 k_inv: np.ndarray, n: int):
        self.kernel_theta = kernel_theta
        self.nugget = nugget
        self.beta = beta
        self.sigma2 = sigma2
        self.n = n
        self._iu, self._iv = np.triu_indices(n, k=1)
        self._s_train_t = np.ascontiguousarray(s_train.T, dtype=np.float32)
        self._dmax = n * (n - 1) / 2.0
        # fused solve: column 0 gives the mean term, the rest the variance
        self._aug = np.concatenate([alpha[:, None], k_inv], axis=1)

    def predict(self, perms: np.ndarray):
        """Posterior (mean, sd) for a batch of permutations (rows)."""
        perms = np.atleast_2d(np.asarray(perms))
        s = _sign_matrix(perms, self._iu, self._iv)
        dots = (s @ self._s_train_t).astype(np.float64)
        d_tilde = (self._dmax - dots) * (0.5 / self._dmax)
        k = np.exp(-self.kernel_theta * d_tilde)
        fused = k @ self._aug
        mean = self.beta + fused[:, 0]
        var = self.sigma2 * (1.0 - np.einsum("ij,ij->i", fused[:, 1:], k))
        sd = np.sqrt(np.maximum(var, 0.0))
        return mean, sd


def gp_fit(state: SurrogateState) -> GPSurrogate:
    """Fit the GP, selecting kernel_theta on a log-grid by concentrated
    log-likelihood; the nugget escalates tenfold from noise_floor until the
    Cholesky factorization succeeds.
    """
    perms = state.perms
    m = len(perms)
    if m < 2 or len(set(perms)) < 2:
        raise SurrogateFitError("need at least 2 distinct evaluated permutations")
    n = len(perms[0])
    p_arr = np.asarray(perms, dtype=np.int64)
    iu, iv = np.triu_indices(n, k=1)
    s_train = _sign_matrix(p_arr, iu, iv)
    dmax = n * (n - 1) / 2.0
    d_tilde = (dmax - (s_train @ s_train.T).astype(np.float64)) * (0.5 / dmax)
    y = np.asarray(state.y, dtype=np.float64)
    ones = np.ones(m)
    eye = np.eye(m)

    best = None  # (logL, theta, L, nugget, beta, sigma2, resid_solve)
    for theta in _THETA_GRID:
        k0 = np.exp(-theta * d_tilde)
        nugget = state.noise_floor
        chol = None
        while nugget < 1.0:
            try:
                chol = cholesky(k0 + nugget * eye, lower=True)
                break
            except np.linalg.LinAlgError:
                nugget *= 10.0
        if chol is None:
            continue
        ki_y = cho_solve((chol, True), y)
        ki_1 = cho_solve((chol, True), ones)
        denom = ones @ ki_1
        if denom <= 0.0:
            continue
        beta = (ones @ ki_y) / denom
        ki_r = ki_y - beta * ki_1
        sigma2 = max((y - beta * ones) @ ki_r / m, 0.0)
        logdet = 2.0 * np.log(np.diag(chol)).sum()
        loglik = -0.5 * (m * math.log(max(sigma2, 1e-300)) + logdet)
        if best is None or loglik > best[0]:
            best = (loglik, theta, chol, nugget, beta, sigma2, ki_r)
    if best is None:
        raise SurrogateFitError("no kernel_theta produced a positive definite kernel")
    _, theta, chol, nugget, beta, sigma2, ki_r = best
    k_inv = cho_solve((chol, True), eye)
    state.kernel_theta = theta
    return GPSurrogate(kernel_theta=theta, nugget=nugget, beta=beta,
                       sigma2=sigma2, s_train=s_train, alpha=ki_r,
                       k_inv=k_inv, n=n)


def _cx_lists(p1: list, p2: list, first_donor: int, pos1: list) -> list:
    # alternate donors over the cycles of the two parents, discovery order
    n = len(p1)
    for idx in range(n):
        pos1[p1[idx]] = idx
    child = [-1] * n
    donor = first_donor
    for start in range(n):
        if child[start] >= 0:
            continue
        src = p1 if donor == 0 else p2
        i = start
        while child[i] < 0:
            child[i] = src[i]
            i = pos1[p2[i]]
        donor ^= 1
    return child


def cycle_crossover(p1: Sequence[int], p2: Sequence[int],
                    rng: np.random.Generator) -> tuple:
    """Cycle crossover: the child takes whole cycles alternately from each
    parent (starting parent chosen at random), so every position keeps a
    value from one of its parents and bijectivity is preserved.
    """
    a = [int(x) for x in p1]
    b = [int(x) for x in p2]
    if len(a) != len(b):
        raise ValueError("parents must have equal lengths")
    if sorted(a) != list(range(len(a))) or sorted(b) != list(range(len(b))):
        raise ValueError("parents must be permutations of 0..n-1")
    return tuple(_cx_lists(a, b, int(rng.integers(2)), [0] * len(a)))


def swap_mutation(p: Sequence[int], rate: float,
                  rng: np.random.Generator) -> tuple:
    """With probability rate, exchange two distinct uniform positions."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError("rate must be in [0, 1]")
    out = tuple(int(x) for x in p)
    n = len(out)
    if n < 2 or rng.random() >= rate:
        return out
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    lst = list(out)
    lst[i], lst[j] = lst[j], lst[i]
    return tuple(lst)


def ga_maximize_ei(surrogate: GPSurrogate, best_f: float, n: int,
                   rng: np.random.Generator):
    """GA over permutations maximizing EI: population 20, binary tournament
    with win probability 0.9, cycle crossover at rate 0.5, swap mutation at
    rate 1/n, elitist, exactly 1e4 surrogate evaluations. Returns the final
    population (ndarray) and EI values, sorted best-first.
    """
    pop = [list(map(int, rng.permutation(n))) for _ in range(_GA_POP)]
    mean, sd = surrogate.predict(np.asarray(pop))
    ei = expected_improvement(mean, sd, best_f)

    # one random block per iteration, consumed generation by generation
    contestants = rng.integers(0, _GA_POP, size=(_GA_GENERATIONS, _GA_POP, 4))
    upsets = rng.random((_GA_GENERATIONS, _GA_POP, 2)) >= _TOURNAMENT_WIN_P
    cx_coins = rng.random((_GA_GENERATIONS, _GA_POP)) < _CROSSOVER_P
    donors = rng.integers(0, 2, size=(_GA_GENERATIONS, _GA_POP))
    mut_coins = rng.random((_GA_GENERATIONS, _GA_POP)) < 1.0 / n
    mut_i = rng.integers(0, n, size=(_GA_GENERATIONS, _GA_POP))
    mut_j = rng.integers(0, n - 1, size=(_GA_GENERATIONS, _GA_POP))

    pos1 = [0] * n
    for g in range(_GA_GENERATIONS):
        idx = contestants[g]
        ei_a = ei[idx[:, 0::2]]
        ei_b = ei[idx[:, 1::2]]
        winners = np.where(ei_a >= ei_b, idx[:, 0::2], idx[:, 1::2])
        losers = np.where(ei_a >= ei_b, idx[:, 1::2], idx[:, 0::2])
        parents = np.where(upsets[g], losers, winners)

        elite_idx = int(np.argmax(ei))
        elite = pop[elite_idx][:]
        elite_ei = float(ei[elite_idx])

        cxg = cx_coins[g]
        dng = donors[g]
        mcg = mut_coins[g]
        mig = mut_i[g]
        mjg = mut_j[g]
        offspring = []
        for c in range(_GA_POP):
            p1 = pop[parents[c, 0]]
            if cxg[c]:
                child = _cx_lists(p1, pop[parents[c, 1]], int(dng[c]), pos1)
            else:
                child = p1[:]
            if mcg[c]:
                i = int(mig[c])
                j = int(mjg[c])
                if j >= i:
                    j += 1
                child[i], child[j] = child[j], child[i]
            offspring.append(child)
        mean, sd = surrogate.predict(np.asarray(offspring))
        off_ei = expected_improvement(mean, sd, best_f)
        worst = int(np.argmin(off_ei))
        if elite_ei > off_ei[worst]:
            offspring[worst] = elite
            off_ei[worst] = elite_ei
        pop = offspring
        ei = off_ei
    order = np.argsort(-ei, kind="stable")
    return np.asarray(pop, dtype=np.int64)[order], ei[order]


def propose_candidate(surrogate: GPSurrogate, best_f: float, n: int,
                      rng: np.random.Generator, evaluated: set) -> tuple:
    """Run the GA and return its champion, avoiding duplicates: fall back to
    the best unevaluated member of the final population, then to forced
    swap mutations of the champion, then to uniform draws. Avoidance is
    best-effort; when the whole space is already evaluated (tiny n with a
    generous budget) the champion is returned as is.
    """
    pop, _ = ga_maximize_ei(surrogate, best_f, n, rng)
    champion = tuple(int(x) for x in pop[0])
    if champion not in evaluated:
        return champion
    for row in pop[1:]:
        cand = tuple(int(x) for x in row)
        if cand not in evaluated:
            return cand
    cand = champion
    for _ in range(500):
        cand = swap_mutation(cand, 1.0, rng)
        if cand not in evaluated:
            return cand
    for _ in range(1000):
        cand = tuple(int(x) for x in rng.permutation(n))
        if cand not in evaluated:
            return cand
    return champion
