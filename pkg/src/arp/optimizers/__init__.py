"""Solution strategies: greedy nearest neighbor, random search, a Mallows
estimation-of-distribution optimizer, and a GP-surrogate optimizer."""

from .base import (RunConfig, RunEntry, RunHistory, cego, greedy_nn,
                   random_search, umm)
from .cego import (GPSurrogate, SurrogateFitError, SurrogateState,
                   cycle_crossover, expected_improvement, ga_maximize_ei,
                   gp_fit, propose_candidate, swap_mutation)
from .mallows import (MallowsState, expected_kendall, mallows_sample,
                      theta_for_target, umm_distance_schedule, weighted_borda)

__all__ = [
    "RunConfig", "RunEntry", "RunHistory",
    "greedy_nn", "random_search", "umm", "cego",
    "GPSurrogate", "SurrogateFitError", "SurrogateState",
    "cycle_crossover", "expected_improvement", "ga_maximize_ei", "gp_fit",
    "propose_candidate", "swap_mutation",
    "MallowsState", "expected_kendall", "mallows_sample", "theta_for_target",
    "umm_distance_schedule", "weighted_borda",
]
