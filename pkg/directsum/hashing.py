"""
Seeded hash families in which, for every set A of at most t domain points, at least half of the
functions are injective on A.

Functions on domains up to HASH_TABLE_MAX_DOMAIN are explicit random tables; larger domains use a
seeded 64-bit mixing function. A family is only handed out after its property has been verified,
exhaustively when the number of t-sets is small and on sampled t-sets otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

try:
    from .. import labconfig
    from ..randomized.coins import ceil_log2
except ImportError:
    import labconfig
    from randomized.coins import ceil_log2

_LOGGER = logging.getLogger(__name__)


def range_constant(t: int, target: Fraction = Fraction(3, 4)) -> int:
    """Smallest C with (1 - 1/(C t))^t >= target: a random map into C t^2 values is injective on t points that often."""
    if t < 1:
        raise ValueError(f"Need t >= 1, got {t}")
    constant = 1
    while (1 - Fraction(1, constant * t)) ** t < target:
        constant += 1
    return constant


def _mix(values: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer of value + key, one row per key."""
    with np.errstate(over="ignore"):
        z = values.astype(np.uint64)[None, :] + keys.astype(np.uint64)[:, None] * np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


@dataclass
class HashFamily:
    m: int
    t: int
    p: int
    size: int
    constant: int
    delta: int
    seed: int
    tables: Optional[np.ndarray] = None
    keys: Optional[np.ndarray] = None
    verified: bool = False
    checked_sets: int = 0
    exhaustive: bool = False

    def apply(self, values: Sequence[int], functions: Optional[Sequence[int]] = None) -> np.ndarray:
        """Images of ``values`` under the chosen functions (all by default): shape (functions, len(values))."""
        values = np.asarray(values, dtype=np.int64)
        if len(values) and (values.min() < 0 or values.max() >= self.m):
            raise ValueError(f"Values outside the domain [0, {self.m})")
        chosen = np.arange(self.size) if functions is None else np.asarray(functions, dtype=np.int64)
        if self.tables is not None:
            return self.tables[chosen][:, values]
        return (_mix(values, self.keys[chosen]) % np.uint64(self.p)).astype(np.int64)

    def injective(self, values: Sequence[int]) -> np.ndarray:
        """For every function, whether it is injective on ``values``."""
        images = np.sort(self.apply(values), axis=1)
        return ~(images[:, 1:] == images[:, :-1]).any(axis=1)

    def first_injective(self, values: Sequence[int]) -> Optional[int]:
        hits = np.flatnonzero(self.injective(values))
        return int(hits[0]) if len(hits) else None

    @property
    def index_bits(self) -> int:
        return ceil_log2(self.size)

    @property
    def value_bits(self) -> int:
        return ceil_log2(self.p)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "t": self.t,
            "p": self.p,
            "size": self.size,
            "C": self.constant,
            "delta": self.delta,
            "seed": self.seed,
            "verified": self.verified,
            "checkedSets": self.checked_sets,
            "exhaustive": self.exhaustive,
        }


def _subsets(m: int, t: int, rng: np.random.Generator):
    """All t-sets when there are few of them, else HASH_SAMPLED_SUBSETS random ones."""
    total = math.comb(m, t)
    if total <= labconfig.HASH_EXHAUSTIVE_LIMIT:
        if t == 1:
            return np.arange(m, dtype=np.int64)[:, None], True
        if t == 2:
            a, b = np.triu_indices(m, k=1)
            return np.stack([a, b], axis=1).astype(np.int64), True
        return np.array(list(combinations(range(m), t)), dtype=np.int64), True
    if t == 2:
        first = rng.integers(0, m, size=labconfig.HASH_SAMPLED_SUBSETS, dtype=np.int64)
        second = rng.integers(0, m - 1, size=labconfig.HASH_SAMPLED_SUBSETS, dtype=np.int64)
        second += second >= first
        return np.stack([first, second], axis=1), False
    sets = np.array([rng.choice(m, size=t, replace=False) for _ in range(labconfig.HASH_SAMPLED_SUBSETS)], dtype=np.int64)
    return sets, False


def verify_family(family: HashFamily, seed: int = 0) -> bool:
    """Checks that at least half of the functions are injective on every (sampled) t-set."""
    t = min(family.t, family.m)
    sets, exhaustive = _subsets(family.m, t, np.random.default_rng([seed, family.m, family.t]))
    images = family.apply(sets.reshape(-1)).reshape(family.size, len(sets), t)
    images = np.sort(images, axis=2)
    injective = ~(images[:, :, 1:] == images[:, :, :-1]).any(axis=2)
    counts = injective.sum(axis=0)
    family.checked_sets = len(sets)
    family.exhaustive = exhaustive
    family.verified = bool((2 * counts >= family.size).all())
    return family.verified


def hash_family_generate(m: int, t: int, seed: int, delta: int = labconfig.HASH_DELTA) -> HashFamily:
    """
    Generates and verifies a family of ceil(delta t log2 m) functions from [0, m) to [0, C t^2).
    A family that fails verification is regenerated from the next seed; RuntimeError after HASH_RETRIES.
    """
    if m < 2 or t < 1:
        raise ValueError(f"Need m >= 2 and t >= 1, got m={m} t={t}")
    constant = range_constant(t, Fraction(labconfig.HASH_INJECTIVE_TARGET).limit_denominator())
    p = constant * t * t
    size = max(1, math.ceil(delta * t * math.log2(m)))
    for attempt in range(labconfig.HASH_RETRIES):
        rng = np.random.default_rng([seed, attempt])
        family = HashFamily(m, t, p, size, constant, delta, seed)
        if m <= labconfig.HASH_TABLE_MAX_DOMAIN:
            family.tables = rng.integers(0, p, size=(size, m), dtype=np.int64)
        else:
            family.keys = rng.integers(0, 2**63, size=size, dtype=np.int64)
        if verify_family(family, seed):
            _LOGGER.info(f"Hash family m={m} t={t}: {size} functions into {p} values, {family.checked_sets} sets checked")
            return family
        _LOGGER.warning(f"Hash family m={m} t={t} seed={seed} attempt {attempt} failed verification; regenerating")
    raise RuntimeError(f"No verified hash family for m={m} t={t} after {labconfig.HASH_RETRIES} attempts")
