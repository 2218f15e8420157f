"""
Replacing public coins by a short list of fixed coin strings.

For t = ceil(c * n / delta^2) strings sampled from the coin distribution, with high probability every
input pair is answered wrongly by at most an (eps + delta) fraction of them. Candidates are drawn
with seeded restarts and checked on every pair; a private-coin protocol then only has to announce
the index of one string.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import numpy as np

try:
    from .. import labconfig
    from ..fnspace import Function
    from .coins import PRIVATE_A, CoinSources, CoinSpace, RandomizedRunner, RandProtocolSpec, ceil_log2
    from .estimates import exact_error
except ImportError:
    import labconfig
    from fnspace import Function
    from randomized.coins import PRIVATE_A, CoinSources, CoinSpace, RandomizedRunner, RandProtocolSpec, ceil_log2
    from randomized.estimates import exact_error

_LOGGER = logging.getLogger(__name__)

DERANDOMIZE_LIMIT_BITS = 16


@dataclass
class DerandomizationResult:
    ok: bool
    strings: np.ndarray
    t: int
    target: Fraction
    worst_error: Fraction
    attempts: int
    errors: List[Fraction] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "t": self.t,
            "target": {"value": float(self.target), "exact": str(self.target)},
            "worstError": {"value": float(self.worst_error), "exact": str(self.worst_error)},
            "attempts": self.attempts,
            "strings": self.strings.tolist() if self.ok else None,
        }


def string_count(n: int, delta: Fraction, c: int = labconfig.DERANDOMIZE_C) -> int:
    return math.ceil(c * n / Fraction(delta) ** 2)


def worst_string_error(runner: RandomizedRunner, f: Function, strings: np.ndarray) -> Fraction:
    """Largest fraction of ``strings`` that answer one pair of f wrongly."""
    values = f.matrix
    mask = f.mask
    ys = np.arange(f.cols, dtype=np.int64)
    worst = 0
    for x in range(f.rows):
        wrong = runner.answers(x, ys, strings) != values[x][:, None]
        if mask is not None:
            wrong[mask[x]] = False
        worst = max(worst, int(wrong.sum(axis=1).max()))
    return Fraction(worst, len(strings))


def derandomize_public(
    f: Function,
    runner: RandomizedRunner,
    delta: Fraction,
    seed: int,
    c: int = labconfig.DERANDOMIZE_C,
    retries: int = labconfig.DERANDOMIZE_RETRIES,
    t: Optional[int] = None,
) -> DerandomizationResult:
    """
    Find t coin strings with error at most eps + delta on every pair of f, eps being the runner's
    nominal error. After ``retries`` failed samples the best attempt is reported with ok=False.
    """
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError(f"Need 0 < delta < 1, got {delta}")
    if f.n_a + f.n_b > DERANDOMIZE_LIMIT_BITS:
        raise ValueError(f"{f.name}: derandomization checks every pair, at most {DERANDOMIZE_LIMIT_BITS} input bits")
    space: CoinSpace = runner.coin_space()
    target = Fraction(runner.spec.nominal_error) + delta

    if exact_error(runner, f).worst_pair_error == 0:
        _LOGGER.info(f"{runner.spec.id} never errs on {f.name}; one string suffices")
        return DerandomizationResult(True, space.coins[:1], 1, target, Fraction(0), 0)

    count = t if t is not None else string_count(f.n_a, delta, c)
    probabilities = space.weights / space.total
    best: Optional[DerandomizationResult] = None
    for attempt in range(1, retries + 1):
        rng = np.random.default_rng([seed, attempt])
        strings = space.coins[rng.choice(space.size, size=count, p=probabilities)]
        worst = worst_string_error(runner, f, strings)
        result = DerandomizationResult(worst <= target, strings, count, target, worst, attempt)
        if result.ok:
            _LOGGER.info(f"{runner.spec.id}: {count} strings with worst error {worst} after {attempt} attempts")
            return result
        _LOGGER.warning(f"{runner.spec.id}: attempt {attempt} reached {worst}, above {target}; retrying")
        if best is None or worst < best.worst_error:
            best = result
    best.ok = False
    best.attempts = retries
    return best


class PrivateFromPublicRunner(RandomizedRunner):
    """A picks one of the fixed strings with private coins, announces its index, and both run on it."""

    def __init__(self, base: RandomizedRunner, strings: np.ndarray, error: Optional[Fraction] = None):
        strings = np.asarray(strings, dtype=np.int64).reshape(-1, base.coin_width)
        if not len(strings):
            raise ValueError("Need at least one coin string")
        self.base = base
        self.strings = strings
        self.n = base.n
        self.coin_width = 1
        self.spec = RandProtocolSpec(
            id=f"private({base.spec.id})",
            coin_model="private",
            error_model=base.spec.error_model,
            nominal_error=error if error is not None else base.spec.nominal_error,
            cost_bits=base.spec.cost_bits + ceil_log2(len(strings)),
            params={"base": base.spec.id, "strings": len(strings)},
        )

    @classmethod
    def from_result(cls, base: RandomizedRunner, result: DerandomizationResult) -> "PrivateFromPublicRunner":
        if not result:
            raise ValueError("Derandomization failed; there is no string list to run on")
        return cls(base, result.strings, result.worst_error)

    def coin_space(self) -> CoinSpace:
        return CoinSpace.uniform(np.arange(len(self.strings), dtype=np.int64)[:, None])

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        return sources.get(PRIVATE_A).integers(len(self.strings), (count, 1))

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        index = np.asarray(coins, dtype=np.int64).reshape(-1)
        return self.base.answers(x, ys, self.strings[index])
