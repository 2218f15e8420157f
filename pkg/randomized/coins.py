"""
Seeded coin streams and the common runner interface of the randomized protocols.

One master seed is split (numpy ``SeedSequence.spawn``) into three independent streams: the public
coins and the private coins of each player. The same seed always yields the same three streams.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

try:
    from .. import labconfig
except ImportError:
    import labconfig

_LOGGER = logging.getLogger(__name__)

PUBLIC = "public"
PRIVATE_A = "privateA"
PRIVATE_B = "privateB"
SCOPES = (PUBLIC, PRIVATE_A, PRIVATE_B)

# Error models: which inputs a run may answer wrongly.
ONE_SIDED_ZERO = "one-sided-0"  # only inputs with f = 0 (EQ fingerprints: never wrong when x = y)
ONE_SIDED_ONE = "one-sided-1"  # only inputs with f = 1
TWO_SIDED = "two-sided"
ERROR_MODELS = (ONE_SIDED_ZERO, ONE_SIDED_ONE, TWO_SIDED)

Seed = Union[int, Sequence[int]]


class CoinSource:
    """One deterministic coin stream; ``consumed`` counts the values drawn so far."""

    def __init__(self, seed: Seed, scope: str, sequence: np.random.SeedSequence):
        if scope not in SCOPES:
            raise ValueError(f"Unknown coin scope {scope!r}, expected one of {SCOPES}")
        self.seed = seed
        self.scope = scope
        self.stream = np.random.default_rng(sequence)
        self.consumed = 0

    def integers(self, high: int, size) -> np.ndarray:
        """Uniform integers in [0, high)."""
        values = self.stream.integers(0, high, size=size, dtype=np.int64)
        self.consumed += int(values.size)
        return values

    def bits(self, count: int) -> np.ndarray:
        return self.integers(2, count).astype(np.uint8)


class CoinSources:
    """The public stream and both private streams of one seed."""

    def __init__(self, seed: Seed):
        entropy = [int(part) for part in seed] if isinstance(seed, (list, tuple)) else int(seed)
        children = np.random.SeedSequence(entropy).spawn(len(SCOPES))
        self.seed = seed
        self._sources: Dict[str, CoinSource] = {
            scope: CoinSource(seed, scope, child) for scope, child in zip(SCOPES, children)
        }

    def get(self, scope: str) -> CoinSource:
        if scope not in self._sources:
            raise ValueError(f"Unknown coin scope {scope!r}, expected one of {SCOPES}")
        return self._sources[scope]

    @property
    def public(self) -> CoinSource:
        return self._sources[PUBLIC]

    @property
    def private_a(self) -> CoinSource:
        return self._sources[PRIVATE_A]

    @property
    def private_b(self) -> CoinSource:
        return self._sources[PRIVATE_B]

    def consumed(self) -> Dict[str, int]:
        return {scope: source.consumed for scope, source in self._sources.items()}


@dataclass(frozen=True)
class RandProtocolSpec:
    id: str
    coin_model: str
    error_model: str
    nominal_error: Fraction
    cost_bits: int
    params: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.coin_model not in ("public", "private"):
            raise ValueError(f"Coin model must be public or private, got {self.coin_model!r}")
        if self.error_model not in ERROR_MODELS:
            raise ValueError(f"Unknown error model {self.error_model!r}")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "coinModel": self.coin_model,
            "errorModel": self.error_model,
            "nominalError": {"value": float(self.nominal_error), "exact": str(self.nominal_error)},
            "costBits": self.cost_bits,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class CoinSpace:
    """Every coin outcome as one row of ``coins``; outcome i has probability weights[i] / total."""

    coins: np.ndarray
    weights: np.ndarray
    total: int

    @classmethod
    def uniform(cls, coins: np.ndarray) -> "CoinSpace":
        return cls(coins, np.ones(len(coins), dtype=np.int64), len(coins))

    @property
    def size(self) -> int:
        return len(self.coins)


def digit_rows(count: int, base: int, width: int) -> np.ndarray:
    """Rows 0..count-1 written in ``base`` with ``width`` digits, least significant digit first."""
    index = np.arange(count, dtype=np.int64)[:, None]
    return (index // (base ** np.arange(width, dtype=np.int64))[None, :]) % base


def check_enumerable(size: int, what: str) -> None:
    if size > labconfig.EXACT_COIN_LIMIT:
        raise ValueError(f"{what} has {size} coin outcomes, above the enumeration limit {labconfig.EXACT_COIN_LIMIT}")


def ceil_log2(value: int) -> int:
    return (value - 1).bit_length() if value > 1 else 0


class RandomizedRunner:
    """
    A randomized protocol for a fixed input size, evaluated on whole blocks of coin rows at once.

    Subclasses implement ``draw_coins`` and ``answers``; those with a finite coin space implement
    ``coin_space`` so errors can be computed exactly.
    """

    spec: RandProtocolSpec
    n: int
    coin_width: int = 1

    def coin_space(self) -> CoinSpace:
        raise ValueError(f"{self.spec.id} does not declare a finite coin space")

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        raise NotImplementedError

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        """Outputs for the pairs (x, y), y in ``ys``, under every coin row: shape (len(ys), len(coins))."""
        raise NotImplementedError

    def bits_used(self) -> int:
        return self.spec.cost_bits

    def pair_errors(self, x: int, ys: np.ndarray, truths: np.ndarray) -> List[Fraction]:
        """Exact error probability of every pair (x, y) against the true values ``truths``."""
        space = self.coin_space()
        wrong = self.answers(x, ys, space.coins) != np.asarray(truths)[:, None]
        counts = wrong.astype(np.int64) @ space.weights
        return [Fraction(int(count), space.total) for count in counts]

    def run(self, x: int, y: int, coins: Sequence[int]) -> Tuple[int, int]:
        """One run on one coin row: (answer, bits communicated)."""
        row = np.asarray(coins, dtype=np.int64).reshape(1, -1)
        if row.shape[1] != self.coin_width:
            raise ValueError(f"{self.spec.id} needs coin rows of width {self.coin_width}, got {row.shape[1]}")
        answer = int(self.answers(x, np.array([y], dtype=np.int64), row)[0, 0])
        return answer, self.bits_used()

    def check_inputs(self, x: int, ys: np.ndarray) -> None:
        limit = 1 << self.n
        if not 0 <= x < limit or (len(ys) and (ys.min() < 0 or ys.max() >= limit)):
            raise ValueError(f"Inputs outside [0, 2^{self.n})")
