# Lab-wide constants (sizes, limits, budgets). Values can be overridden per call or from the CLI.
import os

VERSION = "1.0.0"
SCHEMA_VERSION = 1

# Functions with at most this many cells are stored as a dense matrix, larger ones as a callback.
DENSE_CELL_LIMIT = 2**24

# Exact searches refuse inputs above these total input sizes (nA + nB bits).
EXACT_TREE_LIMIT_BITS = 8  # C^P and D (memoized sub-rectangle branch and bound)
EXACT_COVER_LIMIT_BITS = 8  # cover numbers (set cover over maximal rectangles)
EXACT_PARTITION_LIMIT_BITS = 8  # partition numbers (exact cover with iterative deepening)
EXACT_FOOLING_LIMIT_CELLS = 64  # maximum fooling set via maximum clique
MAX_MAXIMAL_RECTANGLES = 4096  # set-cover candidates; more is a refusal
EXACT_RANK_LIMIT_BITS = 12  # exact ranks and greedy fooling sets in reports

# Node budgets; exhausting one is a refusal, never a silent approximation.
TREE_SEARCH_BUDGET = 2_000_000
COVER_SEARCH_BUDGET = 2_000_000
PARTITION_SEARCH_BUDGET = 2_000_000

# Leaf values are not transmitted; when True the final answer bit is counted (D(EQ_n) = n + 1).
COUNT_ANSWER_BIT = True

# Randomized protocols
PARTITION_EXACT_MAX_N = 3
EXACT_COIN_LIMIT = 2**20  # exact error enumerates at most this many coin outcomes
ALPHA_FIXED_POINT_BITS = 32
MC_BLOCK_TRIALS = 4096
MC_DEFAULT_PAIRS = 8
WILSON_CONFIDENCE = 0.95
DERANDOMIZE_C = 8
# Acceptance amplifies to delta / AMPLIFICATION_HEADROOM so sampled upper bounds can land below delta.
AMPLIFICATION_HEADROOM = 2
DERANDOMIZE_RETRIES = 16

# Hash families for the partial-information protocols
HASH_DELTA = 4
HASH_INJECTIVE_TARGET = 0.75
HASH_TABLE_MAX_DOMAIN = 2**16
HASH_EXHAUSTIVE_LIMIT = 2**16
HASH_SAMPLED_SUBSETS = 10_000
HASH_RETRIES = 8

# Space-bounded protocols
SPACE_STEP_FACTOR = 8

# Sampled verification default for callback-sized trees
VERIFY_SAMPLES = 100_000


def default_seed():
    """Returns the seed from the CCLAB_SEED environment variable, 0 when unset."""
    raw = os.environ.get("CCLAB_SEED", "").strip()
    if not raw:
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise ValueError(f"CCLAB_SEED must be an integer, got {raw!r}")
