"""
Randomized protocols for equality.

Every protocol here is a fingerprint protocol: A sends a short fingerprint of x under the coins, B
answers 1 iff the fingerprint of y under the same coins matches. Equal inputs always match, so all
of them err only on unequal pairs.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

try:
    from .. import labconfig
    from .coins import (
        ONE_SIDED_ZERO,
        PRIVATE_A,
        PUBLIC,
        CoinSources,
        CoinSpace,
        RandomizedRunner,
        RandProtocolSpec,
        ceil_log2,
        check_enumerable,
        digit_rows,
    )
except ImportError:
    import labconfig
    from randomized.coins import (
        ONE_SIDED_ZERO,
        PRIVATE_A,
        PUBLIC,
        CoinSources,
        CoinSpace,
        RandomizedRunner,
        RandProtocolSpec,
        ceil_log2,
        check_enumerable,
        digit_rows,
    )

_LOGGER = logging.getLogger(__name__)


def primes_between(low: int, high: int) -> List[int]:
    """All primes p with low <= p <= high (sieve of Eratosthenes)."""
    if high < 2 or high < low:
        return []
    sieve = np.ones(high + 1, dtype=bool)
    sieve[:2] = False
    for value in range(2, math.isqrt(high) + 1):
        if sieve[value]:
            sieve[value * value :: value] = False
    return [int(p) for p in np.flatnonzero(sieve) if p >= low]


def smallest_prime_at_least(m: int) -> int:
    found = primes_between(m, max(2 * m, 2))
    if not found:
        raise ValueError(f"No prime in [{m}, {2 * m}]")
    return found[0]


def input_bits(values: np.ndarray, n: int) -> np.ndarray:
    """Bit i of every value in column i."""
    return ((np.asarray(values, dtype=np.int64)[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)


class FingerprintRunner(RandomizedRunner):
    """Base of the equality runners: answers compare fingerprints of x and y."""

    def __init__(self, spec: RandProtocolSpec, n: int, coin_width: int, scope: str):
        if n < 1:
            raise ValueError(f"Input size must be positive, got {n}")
        self.spec = spec
        self.n = n
        self.coin_width = coin_width
        self.scope = scope
        self._space: Optional[CoinSpace] = None
        self._table: Optional[np.ndarray] = None

    def fingerprints(self, values: np.ndarray, coins: np.ndarray) -> np.ndarray:
        """Fingerprints of ``values`` under every coin row: shape (len(values), len(coins), depth)."""
        raise NotImplementedError

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        self.check_inputs(x, ys)
        coins = np.asarray(coins, dtype=np.int64).reshape(-1, self.coin_width)
        fx = self.fingerprints(np.array([x], dtype=np.int64), coins)
        fy = self.fingerprints(ys, coins)
        return np.all(fx == fy, axis=2).astype(np.uint8)

    def pair_errors(self, x: int, ys: np.ndarray, truths: np.ndarray) -> List[Fraction]:
        if self._table is None:
            self._space = self.coin_space()
            self._table = self.fingerprints(np.arange(1 << self.n, dtype=np.int64), self._space.coins)
        space = self._space
        ys = np.asarray(ys, dtype=np.int64)
        self.check_inputs(x, ys)
        same = np.all(self._table[x][None, :, :] == self._table[ys], axis=2)
        wrong = same != np.asarray(truths, dtype=bool)[:, None]
        counts = wrong.astype(np.int64) @ space.weights
        return [Fraction(int(count), space.total) for count in counts]


class PartitionEqRunner(FingerprintRunner):
    """
    Public coins split the inputs into k parts; A announces the part of x.

    Up to PARTITION_EXACT_MAX_N input bits the coins are the part of every single input (the full
    space of k-colorings). Above it the part of v is (a . v + b) mod k for uniform a in Z_k^n and b in
    Z_k, which still puts every unequal pair into the same part with probability exactly 1/k.
    """

    def __init__(self, n: int, k: int = 2):
        if k < 2:
            raise ValueError(f"Need at least two parts, got k={k}")
        self.k = k
        self.full_coloring = n <= labconfig.PARTITION_EXACT_MAX_N
        width = (1 << n) if self.full_coloring else n + 1
        spec = RandProtocolSpec(
            id="partition",
            coin_model="public",
            error_model=ONE_SIDED_ZERO,
            nominal_error=Fraction(1, k),
            cost_bits=ceil_log2(k) + 1,
            params={"n": n, "k": k, "coins": "coloring" if self.full_coloring else "linear"},
        )
        super().__init__(spec, n, width, PUBLIC)

    def coin_space(self) -> CoinSpace:
        size = self.k**self.coin_width
        check_enumerable(size, f"partition n={self.n} k={self.k}")
        return CoinSpace.uniform(digit_rows(size, self.k, self.coin_width))

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        return sources.get(self.scope).integers(self.k, (count, self.coin_width))

    def fingerprints(self, values: np.ndarray, coins: np.ndarray) -> np.ndarray:
        if self.full_coloring:
            return coins[:, values].T[:, :, None]
        parts = input_bits(values, self.n) @ coins[:, : self.n].T + coins[:, self.n][None, :]
        return (parts % self.k)[:, :, None]


class InnerProductEqRunner(FingerprintRunner):
    """Public coins are one string z; A sends the parity of x AND z."""

    def __init__(self, n: int):
        spec = RandProtocolSpec(
            id="innerprod",
            coin_model="public",
            error_model=ONE_SIDED_ZERO,
            nominal_error=Fraction(1, 2),
            cost_bits=2,
            params={"n": n},
        )
        super().__init__(spec, n, 1, PUBLIC)

    def coin_space(self) -> CoinSpace:
        size = 1 << self.n
        check_enumerable(size, f"innerprod n={self.n}")
        return CoinSpace.uniform(np.arange(size, dtype=np.int64)[:, None])

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        return sources.get(self.scope).integers(1 << self.n, (count, 1))

    def fingerprints(self, values: np.ndarray, coins: np.ndarray) -> np.ndarray:
        overlap = values[:, None] & coins[:, 0][None, :]
        parity = np.zeros(overlap.shape, dtype=np.int64)
        for bit in range(self.n):
            parity ^= (overlap >> bit) & 1
        return parity[:, :, None]


@lru_cache(maxsize=None)
def equality_primes(n: int) -> Tuple[int, ...]:
    """The primes A chooses from: [n^2, 2n^2], both ends included."""
    if n < 2:
        raise ValueError(f"The prime protocol needs n >= 2, got {n}")
    primes = tuple(primes_between(n * n, 2 * n * n))
    if not primes:
        raise ValueError(f"No prime in [{n * n}, {2 * n * n}]")
    return primes


def prime_divisor_limit(n: int) -> int:
    """How many distinct primes >= n^2 can divide a nonzero difference of two n-bit inputs."""
    count = 0
    while (n * n) ** (count + 1) <= (1 << n) - 1:
        count += 1
    return count


class PrimeEqRunner(FingerprintRunner):
    """A draws a prime p from [n^2, 2n^2] privately and sends p and x mod p."""

    def __init__(self, n: int):
        self.primes = np.array(equality_primes(n), dtype=np.int64)
        spec = RandProtocolSpec(
            id="prime",
            coin_model="private",
            error_model=ONE_SIDED_ZERO,
            nominal_error=Fraction(prime_divisor_limit(n), len(self.primes)),
            cost_bits=4 * ceil_log2(n) + 2 + 1,
            params={"n": n, "primes": len(self.primes)},
        )
        super().__init__(spec, n, 1, PRIVATE_A)

    def coin_space(self) -> CoinSpace:
        return CoinSpace.uniform(np.arange(len(self.primes), dtype=np.int64)[:, None])

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        return sources.get(self.scope).integers(len(self.primes), (count, 1))

    def fingerprints(self, values: np.ndarray, coins: np.ndarray) -> np.ndarray:
        return (values[:, None] % self.primes[coins[:, 0]][None, :])[:, :, None]


class PolyEqRunner(FingerprintRunner):
    """
    Inputs are polynomials over GF(p): bit i of x is the coefficient of z^i. A privately draws
    ``reps`` points and sends each point with the value of its polynomial there.
    """

    def __init__(self, n: int, m: int, reps: int = 1):
        if m < n:
            raise ValueError(f"The field size bound m={m} must be at least n={n}")
        if reps < 1:
            raise ValueError(f"Need at least one repetition, got {reps}")
        self.m = m
        self.reps = reps
        self.p = smallest_prime_at_least(m)
        spec = RandProtocolSpec(
            id="poly",
            coin_model="private",
            error_model=ONE_SIDED_ZERO,
            nominal_error=Fraction(n - 1, self.p) ** reps,
            cost_bits=reps * 2 * ceil_log2(self.p) + 1,
            params={"n": n, "m": m, "p": self.p, "reps": reps},
        )
        super().__init__(spec, n, reps, PRIVATE_A)

    def coin_space(self) -> CoinSpace:
        size = self.p**self.reps
        check_enumerable(size, f"poly p={self.p} reps={self.reps}")
        return CoinSpace.uniform(digit_rows(size, self.p, self.reps))

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        return sources.get(self.scope).integers(self.p, (count, self.reps))

    def fingerprints(self, values: np.ndarray, coins: np.ndarray) -> np.ndarray:
        powers = np.ones(coins.shape + (self.n,), dtype=np.int64)
        for degree in range(1, self.n):
            powers[:, :, degree] = powers[:, :, degree - 1] * coins % self.p
        return np.einsum("vi,kri->vkr", input_bits(values, self.n), powers) % self.p


def _single_run(runner: RandomizedRunner, x: int, y: int, coins: Sequence[int]) -> Tuple[int, int]:
    answer, bits = runner.run(x, y, coins)
    _LOGGER.debug(f"{runner.spec.id}: x={x} y={y} answer={answer} bits={bits}")
    return answer, bits


def run_pub_partition_eq(n: int, x: int, y: int, coins: Sequence[int], k: int = 2) -> Tuple[int, int]:
    return _single_run(PartitionEqRunner(n, k), x, y, coins)


def run_pub_innerprod_eq(n: int, x: int, y: int, coins: Sequence[int]) -> Tuple[int, int]:
    return _single_run(InnerProductEqRunner(n), x, y, coins)


def run_prime_eq(n: int, x: int, y: int, coins: Sequence[int]) -> Tuple[int, int]:
    return _single_run(PrimeEqRunner(n), x, y, coins)


def run_poly_eq(n: int, m: int, reps: int, x: int, y: int, coins: Sequence[int]) -> Tuple[int, int]:
    return _single_run(PolyEqRunner(n, m, reps), x, y, coins)


def poly_parameters(n: int, eps: Fraction, reps: int = 1) -> int:
    """The bound m for which ``reps`` repetitions of the polynomial protocol reach error eps."""
    eps = Fraction(eps)
    if not 0 < eps < 1 or reps < 1:
        raise ValueError(f"Need 0 < eps < 1 and reps >= 1, got eps={eps} reps={reps}")
    m = max(n, math.ceil(n / float(eps) ** (1 / reps)))
    while Fraction(n, m) ** reps > eps:
        m += 1
    return m


def partition_parameters(eps: Fraction) -> int:
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"Need 0 < eps <= 1/2, got {eps}")
    return math.ceil(1 / eps)


def build_runner(proto: str, n: int, k: int = 2, m: Optional[int] = None, reps: int = 1) -> FingerprintRunner:
    """The equality runner named ``proto`` (partition, innerprod, prime or poly)."""
    if proto == "partition":
        return PartitionEqRunner(n, k)
    if proto == "innerprod":
        return InnerProductEqRunner(n)
    if proto == "prime":
        return PrimeEqRunner(n)
    if proto == "poly":
        return PolyEqRunner(n, m if m is not None else 2 * n, reps)
    raise ValueError(f"Unknown protocol {proto!r}, expected partition, innerprod, prime or poly")
