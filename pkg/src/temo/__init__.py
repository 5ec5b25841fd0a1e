"""Tensorized evolutionary multiobjective optimization.

Batched (whole-population) selection operators for NSGA-III, MOEA/D, HypE
and RVEA, the DTLZ benchmark family, quality indicators, sequential
baselines for equivalence testing, and a reproducible experiment harness.
"""

from .directions import DirectionSet, NeighborTable, das_dennis, neighbors
from .harness import RunConfig, RunRecord, emit, run, scaling_experiment
from .hype import HvEstimateParams, exact_hype_fitness_oracle, hv_estimate
from .indicators import eu, hv_indicator, igd
from .moead import MoeadState, compare_update, elite_select, pbi
from .ndsort import RankResult, dominance_matrix, ndsort_oracle, rank_assign
from .nsga3 import associate, environmental_selection, niche_counts, normalize
from .problems import ProblemSpec, evaluate, make_problem, true_front
from .rng import RngStream
from .rvea import ApdParams, apd_select
from .variation import VariationParams, pair_parents, polynomial_mutation, sbx

__version__ = "0.1.0"

__all__ = [
    "ApdParams",
    "DirectionSet",
    "HvEstimateParams",
    "MoeadState",
    "NeighborTable",
    "ProblemSpec",
    "RankResult",
    "RngStream",
    "RunConfig",
    "RunRecord",
    "VariationParams",
    "apd_select",
    "associate",
    "compare_update",
    "das_dennis",
    "dominance_matrix",
    "elite_select",
    "emit",
    "environmental_selection",
    "eu",
    "evaluate",
    "exact_hype_fitness_oracle",
    "hv_estimate",
    "hv_indicator",
    "igd",
    "make_problem",
    "ndsort_oracle",
    "neighbors",
    "niche_counts",
    "normalize",
    "pair_parents",
    "pbi",
    "polynomial_mutation",
    "rank_assign",
    "run",
    "sbx",
    "scaling_experiment",
    "true_front",
    "__version__",
]
