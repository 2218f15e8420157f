"""
Error reduction for randomized runners: repetition with majority vote, repetition of one-sided
protocols, and the biased final answer that turns a one-sided protocol into a two-sided one.

The composed runners compute their exact errors from the exact errors of the base runner, so an
amplified protocol never has to enumerate the product of its coin spaces.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List

import numpy as np

try:
    from .. import labconfig
    from .coins import ONE_SIDED_ONE, ONE_SIDED_ZERO, PRIVATE_A, TWO_SIDED, CoinSources, RandomizedRunner, RandProtocolSpec
except ImportError:
    import labconfig
    from randomized.coins import ONE_SIDED_ONE, ONE_SIDED_ZERO, PRIVATE_A, TWO_SIDED, CoinSources, RandomizedRunner, RandProtocolSpec

_LOGGER = logging.getLogger(__name__)


def amplify_twosided(spec: RandProtocolSpec, delta: Fraction) -> int:
    """Odd number of majority-vote repetitions that brings two-sided error eps down to delta."""
    eps = Fraction(spec.nominal_error)
    delta = Fraction(delta)
    if not 0 < delta < eps < Fraction(1, 2):
        raise ValueError(f"Two-sided amplification needs 0 < delta < eps < 1/2, got eps={eps} delta={delta}")
    reps = math.ceil(-2 * math.log(delta) / float(Fraction(1, 2) - eps) ** 2)
    return reps if reps % 2 else reps + 1


def amplify_onesided(spec: RandProtocolSpec, delta: Fraction) -> int:
    """Smallest r with eps^r <= delta."""
    eps = Fraction(spec.nominal_error)
    delta = Fraction(delta)
    if spec.error_model == TWO_SIDED:
        raise ValueError(f"{spec.id} is two-sided; use majority amplification")
    if not 0 < delta < eps < 1:
        raise ValueError(f"One-sided amplification needs 0 < delta < eps < 1, got eps={eps} delta={delta}")
    reps = 1
    while eps**reps > delta:
        reps += 1
    return reps


@lru_cache(maxsize=4096)
def majority_error(error: Fraction, reps: int) -> Fraction:
    """Probability that more than half of ``reps`` independent runs with error ``error`` are wrong."""
    error = Fraction(error)
    return sum(
        (math.comb(reps, wrong) * error**wrong * (1 - error) ** (reps - wrong) for wrong in range(reps // 2 + 1, reps + 1)),
        Fraction(0),
    )


class _RepeatedRunner(RandomizedRunner):
    def __init__(self, base: RandomizedRunner, reps: int, spec: RandProtocolSpec):
        if reps < 1:
            raise ValueError(f"Need at least one repetition, got {reps}")
        self.base = base
        self.reps = reps
        self.spec = spec
        self.n = base.n
        self.coin_width = base.coin_width * reps

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        coins = self.base.draw_coins(sources, count * self.reps)
        return coins.reshape(count, self.coin_width)

    def _base_answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        width = self.base.coin_width
        coins = np.asarray(coins, dtype=np.int64).reshape(-1, self.coin_width)
        return np.stack(
            [self.base.answers(x, ys, coins[:, rep * width : (rep + 1) * width]) for rep in range(self.reps)], axis=2
        )


class MajorityRunner(_RepeatedRunner):
    """Runs the base protocol ``reps`` times (reps odd) and outputs the majority answer."""

    def __init__(self, base: RandomizedRunner, reps: int):
        if reps % 2 == 0:
            raise ValueError(f"Majority vote needs an odd number of repetitions, got {reps}")
        spec = RandProtocolSpec(
            id=f"majority({base.spec.id},{reps})",
            coin_model=base.spec.coin_model,
            error_model=TWO_SIDED,
            nominal_error=majority_error(base.spec.nominal_error, reps),
            cost_bits=reps * base.spec.cost_bits,
            params={"base": base.spec.id, "reps": reps},
        )
        super().__init__(base, reps, spec)

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        votes = self._base_answers(x, ys, coins).sum(axis=2)
        return (2 * votes > self.reps).astype(np.uint8)

    def pair_errors(self, x: int, ys: np.ndarray, truths: np.ndarray) -> List[Fraction]:
        return [majority_error(error, self.reps) for error in self.base.pair_errors(x, ys, truths)]


class OneSidedRepeatRunner(_RepeatedRunner):
    """
    Repeats a one-sided protocol. Without errors on 1-inputs the answer is 1 only if every run says 1;
    without errors on 0-inputs it is 1 as soon as one run says 1.
    """

    def __init__(self, base: RandomizedRunner, reps: int):
        if base.spec.error_model not in (ONE_SIDED_ZERO, ONE_SIDED_ONE):
            raise ValueError(f"{base.spec.id} is not one-sided")
        spec = RandProtocolSpec(
            id=f"repeat({base.spec.id},{reps})",
            coin_model=base.spec.coin_model,
            error_model=base.spec.error_model,
            nominal_error=Fraction(base.spec.nominal_error) ** reps,
            cost_bits=reps * base.spec.cost_bits,
            params={"base": base.spec.id, "reps": reps},
        )
        super().__init__(base, reps, spec)

    @property
    def needs_all(self) -> bool:
        return self.base.spec.error_model == ONE_SIDED_ZERO

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        runs = self._base_answers(x, ys, coins)
        combined = runs.all(axis=2) if self.needs_all else runs.any(axis=2)
        return combined.astype(np.uint8)

    def pair_errors(self, x: int, ys: np.ndarray, truths: np.ndarray) -> List[Fraction]:
        errors = []
        for error, truth in zip(self.base.pair_errors(x, ys, truths), np.asarray(truths)):
            # probability that one run gives the answer that has to be unanimous
            single = (1 - error if truth else error) if self.needs_all else (error if truth else 1 - error)
            combined = single**self.reps
            if self.needs_all:
                errors.append(1 - combined if truth else combined)
            else:
                errors.append(combined if truth else 1 - combined)
        return errors


def alpha_threshold(eps: Fraction) -> int:
    """The fixed-point threshold T: the biased coin says keep with probability T / 2^ALPHA_FIXED_POINT_BITS."""
    alpha = 1 / (1 + Fraction(eps))
    return math.floor(alpha * 2**labconfig.ALPHA_FIXED_POINT_BITS)


class TwoSidedRunner(RandomizedRunner):
    """
    A one-sided runner whose uncertain answer is kept only with probability alpha = 1/(1+eps).

    An answer the base protocol cannot get wrong is passed through; the other answer is kept with
    probability alpha and flipped otherwise, which balances the errors on both sides near eps/(1+eps).
    """

    def __init__(self, base: RandomizedRunner):
        if base.spec.error_model not in (ONE_SIDED_ZERO, ONE_SIDED_ONE):
            raise ValueError(f"{base.spec.id} is not one-sided")
        eps = Fraction(base.spec.nominal_error)
        if not 0 <= eps < 1:
            raise ValueError(f"One-sided error must be below 1, got {eps}")
        self.base = base
        self.n = base.n
        self.coin_width = base.coin_width + 1
        self.threshold = alpha_threshold(eps)
        self.keep = Fraction(self.threshold, 2**labconfig.ALPHA_FIXED_POINT_BITS)
        # A 1 from a runner without errors on 1-inputs is the uncertain answer.
        self.uncertain = 1 if base.spec.error_model == ONE_SIDED_ZERO else 0
        self.spec = RandProtocolSpec(
            id=f"twosided({base.spec.id})",
            coin_model=base.spec.coin_model,
            error_model=TWO_SIDED,
            nominal_error=max(1 - self.keep, eps * self.keep),
            cost_bits=base.spec.cost_bits,
            params={"base": base.spec.id, "alpha": str(1 / (1 + eps)), "threshold": self.threshold},
        )

    def draw_coins(self, sources: CoinSources, count: int) -> np.ndarray:
        base = self.base.draw_coins(sources, count)
        bias = sources.get(PRIVATE_A).integers(2**labconfig.ALPHA_FIXED_POINT_BITS, (count, 1))
        return np.hstack([base, bias])

    def answers(self, x: int, ys: np.ndarray, coins: np.ndarray) -> np.ndarray:
        coins = np.asarray(coins, dtype=np.int64).reshape(-1, self.coin_width)
        base = self.base.answers(x, ys, coins[:, :-1])
        keep = (coins[:, -1] < self.threshold)[None, :]
        flipped = np.where(keep, base, 1 - base)
        return np.where(base == self.uncertain, flipped, base).astype(np.uint8)

    def pair_errors(self, x: int, ys: np.ndarray, truths: np.ndarray) -> List[Fraction]:
        errors = []
        for error, truth in zip(self.base.pair_errors(x, ys, truths), np.asarray(truths)):
            if truth == self.uncertain:
                # correct base answers are flipped with probability 1 - keep
                errors.append(error + (1 - error) * (1 - self.keep))
            else:
                errors.append(error * self.keep)
        return errors


def onesided_to_twosided(runner: RandomizedRunner) -> TwoSidedRunner:
    wrapped = TwoSidedRunner(runner)
    _LOGGER.info(f"{wrapped.spec.id}: alpha threshold {wrapped.threshold}, nominal error {wrapped.spec.nominal_error}")
    return wrapped


def amplified_runner(runner: RandomizedRunner, delta: Fraction) -> RandomizedRunner:
    """The repetition of ``runner`` that reaches error delta."""
    if runner.spec.error_model == TWO_SIDED:
        return MajorityRunner(runner, amplify_twosided(runner.spec, delta))
    return OneSidedRepeatRunner(runner, amplify_onesided(runner.spec, delta))
