"""
k parallel equality tests in O(k) expected bits with public coins.

A TEST bit of an n-bit input is its inner product with a fresh public string, so equal inputs
always agree and unequal inputs disagree with probability 1/2. Round l groups the surviving
indices into blocks of 2^(l-1) and compares the XOR of their TEST bits. A mismatching block is
tracked back: halving the block with the stored per-index TEST bits certifies one unequal index,
which is removed; the rest of the block is retested with fresh strings until it matches.

There are log2(k) + 1 rounds, the last one a single block of all k indices. An unequal index then
goes undetected only if every round's block XOR matches, which for a single TEST per index
happens with probability about 1/(2k), inside the 2/k bound (4/k^2 with two TESTs per index).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

try:
    from ..randomized.coins import CoinSource, CoinSources
except ImportError:
    from randomized.coins import CoinSource, CoinSources

_LOGGER = logging.getLogger(__name__)


@dataclass
class XkRunStats:
    k: int
    doubled: bool
    total_bits: int = 0
    round_bits: List[int] = field(default_factory=list)
    trackbacks: int = 0
    trackback_bits: List[int] = field(default_factory=list)
    undetected_wrong: int = 0
    answers: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "doubled": self.doubled,
            "totalBits": self.total_bits,
            "roundBits": self.round_bits,
            "trackbacks": self.trackbacks,
            "trackbackBits": self.trackback_bits,
            "undetectedWrong": self.undetected_wrong,
            "answers": self.answers,
        }


def _parity(values: np.ndarray) -> np.ndarray:
    parity = np.zeros(values.shape, dtype=np.int64)
    while values.any():
        parity ^= values & 1
        values = values >> 1
    return parity


class _Tester:
    """Draws fresh TEST strings for the blocks of one run."""

    def __init__(self, n: int, xs: np.ndarray, ys: np.ndarray, coins: CoinSource, tests: int):
        self.n = n
        self.xs = xs
        self.ys = ys
        self.coins = coins
        self.tests = tests

    def fresh(self, indices: Sequence[int]) -> np.ndarray:
        """Per-index TEST bit differences for ``tests`` fresh strings: shape (tests, len(indices))."""
        strings = self.coins.integers(1 << self.n, (self.tests, len(indices)))
        a = _parity(self.xs[list(indices)][None, :] & strings)
        b = _parity(self.ys[list(indices)][None, :] & strings)
        return a ^ b

    def compare(self, differences: np.ndarray) -> Optional[int]:
        """The first test whose XOR over the block mismatches, or None."""
        for test, row in enumerate(differences):
            if row.sum() % 2:
                return test
        return None


def _track_back(block: List[int], differences: np.ndarray) -> Tuple[int, int]:
    """Halves a block with an odd number of differing TEST bits down to one index; returns (index, bits)."""
    low, high = 0, len(block)
    bits = 0
    while high - low > 1:
        middle = (low + high) // 2
        # A sends the XOR of the first half, B answers which half keeps the mismatch
        bits += 2
        if differences[low:middle].sum() % 2:
            high = middle
        else:
            low = middle
    return block[low], bits


def xk_eq_run(
    k: int,
    n: int,
    xs: Sequence[int],
    ys: Sequence[int],
    coins: Optional[CoinSource] = None,
    doubled: bool = False,
    seed: int = 0,
) -> XkRunStats:
    """Runs the protocol on the pairs (xs[i], ys[i]); answers[i] is 0 only for certified unequal pairs."""
    if k < 1 or k & (k - 1):
        raise ValueError(f"k must be a power of two, got {k}")
    if len(xs) != k or len(ys) != k:
        raise ValueError(f"Need {k} inputs on each side, got {len(xs)} and {len(ys)}")
    if not 1 <= n <= 62:
        raise ValueError(f"Input length must be in [1, 62], got {n}")
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if (xs < 0).any() or (ys < 0).any() or (xs >> n).any() or (ys >> n).any():
        raise ValueError(f"Inputs must be {n}-bit values")
    source = coins if coins is not None else CoinSources(seed).public
    tests = 2 if doubled else 1
    tester = _Tester(n, xs, ys, source, tests)
    stats = XkRunStats(k, doubled)
    answers = [1] * k
    surviving = list(range(k))
    rounds = k.bit_length()

    for level in range(1, rounds + 1):
        size = 1 << (level - 1)
        bits = 0
        back_bits = 0
        blocks = [surviving[start : start + size] for start in range(0, len(surviving), size)]
        for block in blocks:
            differences = tester.fresh(block)
            bits += tests + 1
            failing = tester.compare(differences)
            while failing is not None:
                index, cost = _track_back(block, differences[failing])
                stats.trackbacks += 1
                back_bits += cost
                answers[index] = 0
                surviving.remove(index)
                block = [member for member in block if member != index]
                if not block:
                    break
                differences = tester.fresh(block)
                back_bits += tests + 1
                failing = tester.compare(differences)
        stats.round_bits.append(bits)
        stats.trackback_bits.append(back_bits)
        stats.total_bits += bits + back_bits
        _LOGGER.debug(f"Round {level}: {len(blocks)} blocks, {bits} test bits, {back_bits} track-back bits")

    stats.answers = answers
    stats.undetected_wrong = int(sum(1 for i in range(k) if answers[i] == 1 and xs[i] != ys[i]))
    return stats


@dataclass
class XkSweep:
    k: int
    n: int
    wrong: int
    doubled: bool
    runs: int
    mean_bits_per_copy: float
    max_bits: int
    undetected_frequency: float
    false_unequal: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "wrong": self.wrong,
            "doubled": self.doubled,
            "runs": self.runs,
            "meanBitsPerCopy": self.mean_bits_per_copy,
            "maxBits": self.max_bits,
            "undetectedFrequency": self.undetected_frequency,
            "falseUnequal": self.false_unequal,
        }


def random_instance(k: int, n: int, wrong: int, seed: int):
    """k random inputs for A; B's copy differs at ``wrong`` random indices."""
    if not 0 <= wrong <= k:
        raise ValueError(f"Number of unequal pairs must be in [0, {k}], got {wrong}")
    rng = np.random.default_rng([seed, k, n, wrong])
    xs = rng.integers(0, 1 << n, size=k, dtype=np.int64)
    ys = xs.copy()
    flips = rng.integers(1, 1 << n, size=wrong, dtype=np.int64)
    ys[rng.permutation(k)[:wrong]] ^= flips
    return xs, ys


def xk_eq_sweep(k: int, n: int, wrong: int, seeds: Sequence[int], doubled: bool = False) -> XkSweep:
    """Runs one random instance per seed and aggregates cost and detection."""
    bits = []
    undetected = 0
    false_unequal = 0
    for seed in seeds:
        xs, ys = random_instance(k, n, wrong, seed)
        stats = xk_eq_run(k, n, xs, ys, doubled=doubled, seed=seed)
        bits.append(stats.total_bits)
        undetected += stats.undetected_wrong
        false_unequal += sum(1 for i in range(k) if stats.answers[i] == 0 and xs[i] == ys[i])
    runs = len(bits)
    if not runs:
        raise ValueError("Need at least one seed")
    return XkSweep(
        k=k,
        n=n,
        wrong=wrong,
        doubled=doubled,
        runs=runs,
        mean_bits_per_copy=float(np.mean(bits)) / k,
        max_bits=int(max(bits)),
        undetected_frequency=undetected / (runs * wrong) if wrong else 0.0,
        false_unequal=false_unequal,
    )
