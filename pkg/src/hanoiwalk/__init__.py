"""Coined quantum-walk search on the degree-3 Hanoi network."""

from .coins import (CoinSpec, apply_marked_coin, chi_state, epsilon_coin,
                    grover_coin, initial_state)
from .engine import StepOperator, evolve, marked_probability_trace, step
from .errors import (ConfigurationError, DomainError, HanoiWalkError,
                     InsufficientDataError, NoDecompositionError, OracleSizeError)
from .oracle import DenseUnitary, build_dense, compare_engine
from .search import (PeakDetectorConfig, ProbabilityTrace, SearchResult,
                     compute_cost, detect_first_peak, run_search)
from .state import WalkerState, position_distribution, probability_at
from .sweep import (FitResult, SweepRecord, find_optimal_epsilon, fit_cost_exponent,
                    fit_success_decay, sweep_epsilon, sweep_marked_levels, sweep_size)
from .topology import (NetworkSize, VertexCoords, build_shift_permutation, compose,
                       decompose, smallworld_partner, validate_topology)

__version__ = "0.1.0"

__all__ = [
    "CoinSpec",
    "apply_marked_coin",
    "chi_state",
    "epsilon_coin",
    "grover_coin",
    "initial_state",
    "StepOperator",
    "evolve",
    "marked_probability_trace",
    "step",
    "ConfigurationError",
    "DomainError",
    "HanoiWalkError",
    "InsufficientDataError",
    "NoDecompositionError",
    "OracleSizeError",
    "DenseUnitary",
    "build_dense",
    "compare_engine",
    "PeakDetectorConfig",
    "ProbabilityTrace",
    "SearchResult",
    "compute_cost",
    "detect_first_peak",
    "run_search",
    "WalkerState",
    "position_distribution",
    "probability_at",
    "FitResult",
    "SweepRecord",
    "find_optimal_epsilon",
    "fit_cost_exponent",
    "fit_success_decay",
    "sweep_epsilon",
    "sweep_marked_levels",
    "sweep_size",
    "NetworkSize",
    "VertexCoords",
    "build_shift_permutation",
    "compose",
    "decompose",
    "smallworld_partner",
    "validate_topology",
]
