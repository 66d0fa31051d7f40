"""Experiment orchestration: repeated optimizer runs on an instance, with
per-evaluation history CSVs and a per-group summary CSV.

Output layout: ``<outdir>/<instance>/<algo>-<repr>[-greedy]/run<r>.csv`` plus
``summary.csv`` in the same group directory. Every column except the wall
times is byte-stable across reruns of the same spec.
"""

from __future__ import annotations

import csv
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .optimizers import (RunConfig, RunHistory, cego, greedy_nn,
                         random_search, umm)
from .permutation import Representation, maxmin_design
from .problem import Instance

log = logging.getLogger(__name__)

ALGORITHMS = ("greedy", "rs", "umm", "cego")

_DESIGN_STREAM = 97  # second word of the init-design rng seed

HISTORY_HEADER = ("eval", "perm", "f", "dv", "T", "wall_ms")
SUMMARY_HEADER = ("instance", "algo", "repr", "greedy_seed", "run", "seed",
                  "best_f", "best_dv", "best_T", "wall_s")


@dataclass(frozen=True)
class ExperimentSpec:
    instance: Instance
    algorithm: str
    representation: Representation = Representation.ORDER
    budget: int = 400
    repetitions: int = 30
    base_seed: int = 0
    greedy_seed: bool = False
    outdir: str = "results"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.greedy_seed and self.algorithm in ("greedy", "rs"):
            raise ValueError("greedy seeding applies to umm and cego only")

    @property
    def group(self) -> str:
        tag = f"{self.algorithm}-{self.representation.value}"
        return tag + "-greedy" if self.greedy_seed else tag

    @property
    def group_dir(self) -> str:
        return os.path.join(self.outdir, self.instance.name, self.group)


@dataclass
class RunOutcome:
    run: int
    seed: int
    history: RunHistory
    wall_s: float


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    outcomes: List[RunOutcome] = field(default_factory=list)
    failures: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def group_dir(self) -> str:
        return self.spec.group_dir


def build_init_design(instance: Instance, config: RunConfig,
                      greedy_perm: Optional[tuple] = None) -> list:
    """Init design in the optimizer's representation space.

    Uninformed: ``init_design_size`` max-min permutations from the design
    stream. Informed (config.greedy_seed): the design is seeded with the
    greedy solution, then reordered so the nine random members are evaluated
    first and the greedy member tenth.
    """
    rng = np.random.default_rng([config.seed, _DESIGN_STREAM])
    seeds = None
    if config.greedy_seed:
        if greedy_perm is None:
            greedy_perm = greedy_nn(instance)[0]
        seeds = [config.representation.convert(greedy_perm)]
    design = maxmin_design(instance.n, config.init_design_size, rng, seeds)
    if config.greedy_seed:
        design = design[1:] + [design[0]]
    return design


def run_single(instance: Instance, algorithm: str, config: RunConfig,
               greedy_perm: Optional[tuple] = None):
    """One optimizer run. Returns (RunHistory, wall seconds)."""
    t0 = time.perf_counter()
    if algorithm == "greedy":
        perm, evaluation = greedy_nn(instance)
        history = RunHistory()
        history.record(perm, evaluation, time.perf_counter() - t0)
    elif algorithm == "rs":
        history = random_search(instance, config)
    elif algorithm in ("umm", "cego"):
        init = build_init_design(instance, config, greedy_perm)
        runner = umm if algorithm == "umm" else cego
        history = runner(instance, config, init)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return history, time.perf_counter() - t0


def _format_float(x: float) -> str:
    return repr(float(x))


def write_history_csv(path: str, history: RunHistory) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(HISTORY_HEADER)
        for e in history.entries:
            writer.writerow((
                e.eval_index,
                "-".join(str(i) for i in e.perm),
                _format_float(e.f), _format_float(e.dv), _format_float(e.T),
                f"{e.wall_time * 1000.0:.3f}"))


def write_summary_csv(path: str, spec: ExperimentSpec,
                      outcomes: Sequence[RunOutcome]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for oc in sorted(outcomes, key=lambda o: o.run):
            best = oc.history.best
            writer.writerow((
                spec.instance.name, spec.algorithm,
                spec.representation.value,
                "true" if spec.greedy_seed else "false",
                oc.run, oc.seed,
                _format_float(best.f), _format_float(best.dv),
                _format_float(best.T), f"{oc.wall_s:.3f}"))


def _execute_run(args):
    spec, run, greedy_perm = args
    seed = spec.base_seed + run
    config = RunConfig(budget=spec.budget,
                       representation=spec.representation,
                       seed=seed, greedy_seed=spec.greedy_seed)
    history, wall = run_single(spec.instance, spec.algorithm, config,
                               greedy_perm)
    return RunOutcome(run=run, seed=seed, history=history, wall_s=wall)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentResult:
    """Execute ``spec.repetitions`` runs (run r seeded base_seed + r), write
    run CSVs and the group summary. Failed runs are recorded and skipped;
    the rest proceed.
    """
    os.makedirs(spec.group_dir, exist_ok=True)
    greedy_perm = None
    if spec.greedy_seed:
        greedy_perm = greedy_nn(spec.instance)[0]  # deterministic, shared
    jobs = [(spec, run, greedy_perm) for run in range(spec.repetitions)]
    result = ExperimentResult(spec=spec)
    if workers <= 1:
        for job in jobs:
            try:
                result.outcomes.append(_execute_run(job))
            except Exception as exc:  # noqa: BLE001 - per-run isolation
                log.warning("run %d failed: %s", job[1], exc)
                result.failures.append((job[1], str(exc)))
    else:
        with multiprocessing.Pool(workers) as pool:
            async_results = [(run, pool.apply_async(_execute_run, (job,)))
                             for job, run in zip(jobs, range(spec.repetitions))]
            for run, ar in async_results:
                try:
                    result.outcomes.append(ar.get())
                except Exception as exc:  # noqa: BLE001
                    log.warning("run %d failed: %s", run, exc)
                    result.failures.append((run, str(exc)))
    for oc in result.outcomes:
        write_history_csv(os.path.join(spec.group_dir, f"run{oc.run}.csv"),
                          oc.history)
    write_summary_csv(os.path.join(spec.group_dir, "summary.csv"), spec,
                      result.outcomes)
    return result
