"""Benchmark laboratory for the asteroid routing problem.

Instance generation from an orbital catalog, visiting-sequence evaluation
via Lambert-transfer impulse costs with a deterministic per-leg time
optimizer, and a harness for comparing permutation optimizers under a
fixed evaluation budget.
"""

from .orbits import DAY_S
from .problem import (AU_KM, DEFAULT_TAU0, SUN_MU, AsteroidCatalog,
                      Evaluation, Instance, evaluate_full, evaluate_sequence,
                      generate_instance, load_catalog, load_instance,
                      save_instance, scalarize, synthetic_catalog)

__version__ = "0.1.0"

__all__ = [
    "AU_KM", "DAY_S", "DEFAULT_TAU0", "SUN_MU",
    "AsteroidCatalog", "Evaluation", "Instance",
    "evaluate_full", "evaluate_sequence", "generate_instance",
    "load_catalog", "load_instance", "save_instance", "scalarize",
    "synthetic_catalog",
]
