"""
Oracle protocols, reductions and completeness constructions, fixed-size class measures and
space-bounded protocols.
"""

from .measures import ClassMeasures, index_bit_cover, is_cover, measures_report, nondet_complexity, sigma_pi_membership
from .oracles import (
    OracleCheck,
    OracleProtocol,
    Query,
    eq_via_disj,
    eq_via_gt,
    oracle_eval,
    self_oracle,
    verify_oracle_protocol,
)
from .reductions import (
    Reduction,
    ReductionCheck,
    compose_reductions,
    disj_target,
    disjunction,
    lift_completeness,
    reduce_to_disj_from_zero_cover,
    single_cell_parts,
    verify_reduction,
)
from .space import (
    CompiledScheme,
    SpaceCheck,
    SpaceProtocol,
    constant_protocol,
    sa_block_protocol,
    space_bracket,
    space_eq_protocol,
    space_eval,
    space_to_time_compile,
    verify_space_protocol,
)

__all__ = [
    # Oracles
    'OracleProtocol',
    'Query',
    'OracleCheck',
    'oracle_eval',
    'verify_oracle_protocol',
    'eq_via_gt',
    'eq_via_disj',
    'self_oracle',
    # Reductions
    'Reduction',
    'ReductionCheck',
    'verify_reduction',
    'compose_reductions',
    'reduce_to_disj_from_zero_cover',
    'disj_target',
    'disjunction',
    'lift_completeness',
    'single_cell_parts',
    # Measures
    'ClassMeasures',
    'nondet_complexity',
    'index_bit_cover',
    'is_cover',
    'measures_report',
    'sigma_pi_membership',
    # Space
    'SpaceProtocol',
    'SpaceCheck',
    'CompiledScheme',
    'space_eval',
    'verify_space_protocol',
    'constant_protocol',
    'space_eq_protocol',
    'sa_block_protocol',
    'space_bracket',
    'space_to_time_compile',
]
