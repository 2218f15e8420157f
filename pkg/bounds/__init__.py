"""
Lower bounds and exact complexity measures for small two-party functions.
Ranks, fooling sets, monochromatic rectangles, cover/partition numbers and exact tree searches.
"""

from .fooling import FoolingCheck, FoolingSet, fooling_set_of, greedy_fooling_set, max_fooling_set, verify_fooling_set
from .rank import SubadditivityResult, bareiss_rank, rank_gf2, rank_rational, rank_subadditivity
from .rectangles import (
    DiscrepancyBound,
    discrepancy_bound,
    max_mono_rectangle,
    max_weight_rectangle,
    maximal_rectangle_objects,
    maximal_rectangles,
)
from .search import (
    CoverResult,
    PartitionResult,
    SearchBudgetExceeded,
    TreeSearchResult,
    cover_number,
    deterministic_complexity,
    partition_number,
    protocol_color_number,
    protocol_partition_number,
)
from .report import BoundReport, bound_report

__all__ = [
    # Fooling sets
    'FoolingSet',
    'FoolingCheck',
    'fooling_set_of',
    'verify_fooling_set',
    'greedy_fooling_set',
    'max_fooling_set',
    # Ranks
    'bareiss_rank',
    'rank_rational',
    'rank_gf2',
    'rank_subadditivity',
    'SubadditivityResult',
    # Rectangles
    'maximal_rectangles',
    'maximal_rectangle_objects',
    'max_mono_rectangle',
    'max_weight_rectangle',
    'discrepancy_bound',
    'DiscrepancyBound',
    # Exact searches
    'SearchBudgetExceeded',
    'CoverResult',
    'PartitionResult',
    'TreeSearchResult',
    'cover_number',
    'partition_number',
    'protocol_partition_number',
    'protocol_color_number',
    'deterministic_complexity',
    # Report
    'BoundReport',
    'bound_report',
]
