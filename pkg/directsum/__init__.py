"""
Direct-sum laboratory: budgets for k parallel copies of a protocol, parallel equality tests and
the NBA partial-information protocols.
"""

from .budget import (
    Allocation,
    GBudget,
    PrefixClass,
    SweepResult,
    ceil_log_product,
    counting_lemma_check,
    floor_log_product,
    lemma_sweep,
    prefix_allocate,
    rank_positions,
    unrank_positions,
)
from .hashing import HashFamily, hash_family_generate, range_constant, verify_family
from .nba import (
    MODES,
    BatchedRun,
    ExhaustiveCheck,
    nba_batched,
    nba_exhaustive,
    nba_family,
    nba_interactive,
    nba_one_way,
    nba_two_round,
    random_edges,
)
from .xk_equality import XkRunStats, XkSweep, random_instance, xk_eq_run, xk_eq_sweep

__all__ = [
    # budgets
    "GBudget",
    "counting_lemma_check",
    "lemma_sweep",
    "SweepResult",
    "prefix_allocate",
    "Allocation",
    "PrefixClass",
    "floor_log_product",
    "ceil_log_product",
    "rank_positions",
    "unrank_positions",
    # parallel equality
    "xk_eq_run",
    "xk_eq_sweep",
    "random_instance",
    "XkRunStats",
    "XkSweep",
    # hashing
    "HashFamily",
    "hash_family_generate",
    "verify_family",
    "range_constant",
    # NBA
    "MODES",
    "nba_one_way",
    "nba_interactive",
    "nba_two_round",
    "nba_batched",
    "nba_family",
    "nba_exhaustive",
    "random_edges",
    "BatchedRun",
    "ExhaustiveCheck",
]
