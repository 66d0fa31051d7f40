"""Optimizer entry points and shared run plumbing.

Every optimizer spends exactly ``config.budget`` true-objective evaluations
(each one a full inner-solver pass over the sequence) and records them in a
RunHistory. Permutations in histories are always in visit-order space;
optimizers working in the rank representation convert on the way in and out.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from ..orbits import Orbit
from ..permutation import Representation, sample_uniform
from ..problem import Evaluation, Instance, evaluate_sequence
from .cego import SurrogateFitError, SurrogateState, gp_fit, propose_candidate
from .mallows import (MallowsState, mallows_sample, theta_for_target,
                      umm_distance_schedule, weighted_borda)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    budget: int = 400
    representation: Representation = Representation.ORDER
    init_design_size: int = 10
    seed: int = 0
    greedy_seed: bool = False

    def __post_init__(self):
        if not self.budget >= self.init_design_size >= 1:
            raise ValueError("need budget >= init_design_size >= 1")


class RunEntry(NamedTuple):
    eval_index: int  # 1-based
    perm: tuple  # visit-order space
    f: float
    dv: float
    T: float
    wall_time: float  # seconds spent in this evaluation


@dataclass
class RunHistory:
    entries: List[RunEntry] = field(default_factory=list)

    def record(self, perm: tuple, evaluation: Evaluation,
               wall_time: float) -> None:
        self.entries.append(RunEntry(
            eval_index=len(self.entries) + 1, perm=tuple(perm),
            f=evaluation.f, dv=evaluation.dv, T=evaluation.T,
            wall_time=wall_time))

    @property
    def best(self) -> RunEntry:
        return min(self.entries, key=lambda e: e.f)

    def best_curve(self) -> list:
        out = []
        cur = math.inf
        for e in self.entries:
            cur = min(cur, e.f)
            out.append(cur)
        return out


class _Recorder:
    """Budget-guarded evaluator; every call lands in the history."""

    def __init__(self, instance: Instance, budget: int):
        self.instance = instance
        self.budget = budget
        self.history = RunHistory()

    def evaluate(self, visit_perm: tuple) -> float:
        if len(self.history.entries) >= self.budget:
            raise RuntimeError("evaluation budget exceeded")
        t0 = time.perf_counter()
        evaluation, _ = evaluate_sequence(self.instance, visit_perm)
        self.history.record(visit_perm, evaluation,
                            time.perf_counter() - t0)
        return evaluation.f

    @property
    def spent(self) -> int:
        return len(self.history.entries)


def greedy_nn(instance: Instance):
    """Nearest-neighbor heuristic: repeatedly fly to the asteroid currently
    closest in Euclidean position, solving each leg's times as it goes; the
    last unvisited asteroid is appended without a distance query. Ties break
    toward the lowest asteroid index. Returns (permutation, Evaluation).
    """
    n = instance.n
    mu = instance.mu
    orbits = [Orbit(el, mu) for el in instance.asteroids]
    current = Orbit(instance.earth, mu)
    tau = instance.tau0
    unvisited = list(range(n))
    pi = []
    from ..inner_solver import optimize_leg

    for _ in range(n - 1):
        here = current.position_at(tau)
        best_j = None
        best_d = math.inf
        for j in unvisited:
            there = orbits[j].position_at(tau)
            d = math.dist(here, there)
            if d < best_d:
                best_d = d
                best_j = j
        leg = optimize_leg(
            instance.earth if not pi else instance.asteroids[pi[-1]],
            instance.asteroids[best_j], tau, mu)
        tau += leg.t_park + leg.t_transit
        pi.append(best_j)
        unvisited.remove(best_j)
        current = orbits[best_j]
    pi.append(unvisited[0])
    perm = tuple(pi)
    evaluation, _ = evaluate_sequence(instance, perm)
    return perm, evaluation


def random_search(instance: Instance, config: RunConfig) -> RunHistory:
    """Evaluate ``budget`` uniform random permutations."""
    rng = np.random.default_rng(config.seed)
    rec = _Recorder(instance, config.budget)
    for _ in range(config.budget):
        internal = sample_uniform(instance.n, rng)
        rec.evaluate(config.representation.convert(internal))
    return rec.history


def _evaluate_init(rec: _Recorder, config: RunConfig,
                   init: Sequence[Sequence[int]]):
    perms = []
    fs = []
    for p in init:
        internal = tuple(int(x) for x in p)
        f = rec.evaluate(config.representation.convert(internal))
        perms.append(internal)
        fs.append(f)
    return perms, fs


_WEIGHT_SHARPNESS = 20.0


def _borda_weights(fs: Sequence[float]) -> list:
    """Softmax over range-normalized objective values, best = 1.

    The best evaluations hold almost all the mass no matter how many
    mediocre ones accumulate, so the consensus tracks the incumbent: a
    run seeded with one far-better solution keeps its center pinned
    there. Near-flat schemes (rank-linear weights) lose that anchoring
    once a few hundred evaluations pile up and the center drifts into
    unvisited mediocre territory.
    """
    arr = np.asarray(fs, dtype=float)
    lo = arr.min()
    span = arr.max() - lo
    if span == 0.0:
        return [1.0] * len(fs)
    return list(np.exp(-_WEIGHT_SHARPNESS * (arr - lo) / span))


def umm(instance: Instance, config: RunConfig,
        init: Sequence[Sequence[int]]) -> RunHistory:
    """Mallows estimation-of-distribution optimizer.

    Each iteration recomputes the weighted Borda center over everything
    evaluated so far, sets the dispersion so the expected sampling distance
    follows the linear schedule (half-uniform down to 1), and draws one
    permutation. ``init`` is in the optimizer's representation space and is
    evaluated first, against the same budget.
    """
    rng = np.random.default_rng(config.seed)
    rec = _Recorder(instance, config.budget)
    perms, fs = _evaluate_init(rec, config, init)
    iterations = config.budget - rec.spent
    if iterations > 0:
        schedule = umm_distance_schedule(instance.n, iterations)
        for k in range(iterations):
            sigma0 = weighted_borda(perms, _borda_weights(fs))
            theta = theta_for_target(instance.n, schedule[k])
            internal = mallows_sample(
                MallowsState(sigma0=sigma0, theta=theta, iteration=k + 1), rng)
            f = rec.evaluate(config.representation.convert(internal))
            perms.append(internal)
            fs.append(f)
    return rec.history


def cego(instance: Instance, config: RunConfig,
         init: Sequence[Sequence[int]]) -> RunHistory:
    """Surrogate-assisted optimizer: after the init design, each iteration
    fits the Kendall-kernel GP on all evaluations and spends one true
    evaluation on the GA's expected-improvement champion (skipping
    duplicates). A failed surrogate fit falls back to a uniform draw.
    """
    rng = np.random.default_rng(config.seed)
    rec = _Recorder(instance, config.budget)
    perms, fs = _evaluate_init(rec, config, init)
    evaluated = set(perms)
    while rec.spent < config.budget:
        try:
            surrogate = gp_fit(SurrogateState(perms=tuple(perms), y=tuple(fs)))
            internal = propose_candidate(surrogate, min(fs), instance.n, rng,
                                         evaluated)
        except (SurrogateFitError, np.linalg.LinAlgError) as exc:
            log.warning("surrogate fit failed (%s); sampling uniformly", exc)
            internal = sample_uniform(instance.n, rng)
            for _ in range(1000):
                if internal not in evaluated:
                    break
                internal = sample_uniform(instance.n, rng)
        f = rec.evaluate(config.representation.convert(internal))
        perms.append(internal)
        fs.append(f)
        evaluated.add(internal)
    return rec.history
