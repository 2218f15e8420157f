"""
Randomized protocols for equality, error amplification, public-to-private conversion and error measurement.
"""

from .amplification import (
    MajorityRunner,
    OneSidedRepeatRunner,
    TwoSidedRunner,
    amplified_runner,
    amplify_onesided,
    amplify_twosided,
    majority_error,
    onesided_to_twosided,
)
from .coins import (
    ERROR_MODELS,
    ONE_SIDED_ONE,
    ONE_SIDED_ZERO,
    PRIVATE_A,
    PRIVATE_B,
    PUBLIC,
    TWO_SIDED,
    CoinSource,
    CoinSources,
    CoinSpace,
    RandomizedRunner,
    RandProtocolSpec,
)
from .derandomize import DerandomizationResult, PrivateFromPublicRunner, derandomize_public, string_count
from .equality import (
    InnerProductEqRunner,
    PartitionEqRunner,
    PolyEqRunner,
    PrimeEqRunner,
    build_runner,
    equality_primes,
    partition_parameters,
    poly_parameters,
    primes_between,
    run_poly_eq,
    run_prime_eq,
    run_pub_innerprod_eq,
    run_pub_partition_eq,
)
from .estimates import ErrorEstimate, PairError, exact_error, mc_error, wilson_interval
from .lambda_function import lambda_cap, lambda_inv, lambda_inv_shifted
from .lower_bounds import distinct_rows, has_distinct_rows, one_way_lower_bound, rnd_lower_bound_values

__all__ = [
    # coins and runners
    "CoinSource",
    "CoinSources",
    "CoinSpace",
    "RandomizedRunner",
    "RandProtocolSpec",
    "PUBLIC",
    "PRIVATE_A",
    "PRIVATE_B",
    "ONE_SIDED_ZERO",
    "ONE_SIDED_ONE",
    "TWO_SIDED",
    "ERROR_MODELS",
    # equality protocols
    "PartitionEqRunner",
    "InnerProductEqRunner",
    "PrimeEqRunner",
    "PolyEqRunner",
    "build_runner",
    "run_pub_partition_eq",
    "run_pub_innerprod_eq",
    "run_prime_eq",
    "run_poly_eq",
    "primes_between",
    "equality_primes",
    "poly_parameters",
    "partition_parameters",
    # amplification
    "amplify_twosided",
    "amplify_onesided",
    "amplified_runner",
    "majority_error",
    "MajorityRunner",
    "OneSidedRepeatRunner",
    "TwoSidedRunner",
    "onesided_to_twosided",
    # derandomization
    "derandomize_public",
    "string_count",
    "DerandomizationResult",
    "PrivateFromPublicRunner",
    # measurement
    "ErrorEstimate",
    "PairError",
    "exact_error",
    "mc_error",
    "wilson_interval",
    # bounds
    "lambda_cap",
    "lambda_inv",
    "lambda_inv_shifted",
    "rnd_lower_bound_values",
    "one_way_lower_bound",
    "distinct_rows",
    "has_distinct_rows",
]
