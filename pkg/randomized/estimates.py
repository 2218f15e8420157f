"""
Error measurement for randomized runners: exact enumeration of the coin space, and seeded Monte Carlo
with Wilson confidence intervals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy.stats import binomtest

try:
    from .. import labconfig
    from ..fnspace import Function
    from .coins import CoinSources, RandomizedRunner
except ImportError:
    import labconfig
    from fnspace import Function
    from randomized.coins import CoinSources, RandomizedRunner

_LOGGER = logging.getLogger(__name__)

Number = Union[Fraction, float]


@dataclass
class PairError:
    x: int
    y: int
    truth: int
    error: Number
    errors: Optional[int] = None
    trials: Optional[int] = None
    ci: Optional[Tuple[float, float]] = None

    def to_json(self) -> dict:
        payload = {"x": self.x, "y": self.y, "truth": self.truth, "error": _number_json(self.error)}
        if self.trials is not None:
            payload.update({"errors": self.errors, "trials": self.trials, "ci": list(self.ci)})
        return payload


@dataclass
class ErrorEstimate:
    mode: str
    protocol: str
    worst_pair_error: Number
    worst_pair: Optional[Tuple[int, int]]
    worst_on_ones: Number = 0
    worst_on_zeros: Number = 0
    per_pair: List[PairError] = field(default_factory=list)
    trials: Optional[int] = None
    seed: Optional[int] = None
    confidence: Optional[float] = None
    worst_upper: Optional[float] = None

    def to_json(self, include_pairs: bool = False) -> dict:
        payload = {
            "mode": self.mode,
            "protocol": self.protocol,
            "worstPairError": _number_json(self.worst_pair_error),
            "worstPair": list(self.worst_pair) if self.worst_pair else None,
            "worstOnOnes": _number_json(self.worst_on_ones),
            "worstOnZeros": _number_json(self.worst_on_zeros),
        }
        if self.mode == "montecarlo":
            payload.update({"trials": self.trials, "seed": self.seed, "confidence": self.confidence, "worstUpper": self.worst_upper})
        if include_pairs:
            payload["perPair"] = [pair.to_json() for pair in self.per_pair]
        return payload


def _number_json(value: Number) -> dict:
    if isinstance(value, Fraction):
        return {"value": float(value), "exact": str(value)}
    return {"value": float(value)}


def _summarize(mode: str, runner: RandomizedRunner, pairs: List[PairError], **extra) -> ErrorEstimate:
    worst = max(pairs, key=lambda pair: pair.error, default=None)
    ones = [pair.error for pair in pairs if pair.truth == 1]
    zeros = [pair.error for pair in pairs if pair.truth == 0]
    return ErrorEstimate(
        mode=mode,
        protocol=runner.spec.id,
        worst_pair_error=worst.error if worst else 0,
        worst_pair=(worst.x, worst.y) if worst else None,
        worst_on_ones=max(ones, default=0),
        worst_on_zeros=max(zeros, default=0),
        per_pair=pairs,
        **extra,
    )


def _check_shape(runner: RandomizedRunner, f: Function) -> None:
    if not f.is_boolean:
        raise ValueError(f"{f.name}: error measurement needs a Boolean function")
    if f.n_a != runner.n or f.n_b != runner.n:
        raise ValueError(f"{runner.spec.id} takes {runner.n}-bit inputs, {f.name} has {f.n_a}+{f.n_b}")


def exact_error(runner: RandomizedRunner, f: Function) -> ErrorEstimate:
    """Exact error of every defined pair, by enumerating the runner's coin space."""
    _check_shape(runner, f)
    values = f.matrix
    mask = f.mask
    ys = np.arange(f.cols, dtype=np.int64)
    pairs: List[PairError] = []
    for x in range(f.rows):
        row = ys if mask is None else ys[~mask[x]]
        if not len(row):
            continue
        truths = values[x, row].astype(np.int64)
        for y, truth, error in zip(row, truths, runner.pair_errors(x, row, truths)):
            pairs.append(PairError(x, int(y), int(truth), error))
    estimate = _summarize("exact", runner, pairs)
    _LOGGER.info(f"{runner.spec.id} on {f.name}: exact worst pair error {estimate.worst_pair_error}")
    return estimate


def default_pairs(f: Function, seed: int, count: int = labconfig.MC_DEFAULT_PAIRS) -> List[Tuple[int, int]]:
    """Half of the pairs on the diagonal, half off it, drawn with ``seed``."""
    rng = np.random.default_rng(seed)
    pairs = []
    for index in range(count):
        x = int(rng.integers(f.rows))
        if index % 2 == 0 or f.cols == 1:
            y = min(x, f.cols - 1)
        else:
            y = int(rng.integers(f.cols - 1))
            y += y >= x
        if not f.is_masked(x, y):
            pairs.append((x, y))
    return pairs


def wilson_interval(errors: int, trials: int, confidence: float = labconfig.WILSON_CONFIDENCE) -> Tuple[float, float]:
    interval = binomtest(errors, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(interval.low), float(interval.high)


def mc_error(
    runner: RandomizedRunner,
    f: Function,
    trials: int,
    seed: int,
    pairs: Optional[Iterable[Tuple[int, int]]] = None,
    confidence: float = labconfig.WILSON_CONFIDENCE,
) -> ErrorEstimate:
    """
    Monte Carlo error of the given pairs. Trials run in blocks of MC_BLOCK_TRIALS; block b of pair i
    draws its coins from the seed sequence (seed, i, b), so the result depends only on the seed.
    """
    if trials <= 0:
        raise ValueError("no trials")
    _check_shape(runner, f)
    chosen = list(pairs) if pairs is not None else default_pairs(f, seed)
    results: List[PairError] = []
    for index, (x, y) in enumerate(chosen):
        truth = f.evaluate(x, y)
        wrong = 0
        for block, start in enumerate(range(0, trials, labconfig.MC_BLOCK_TRIALS)):
            count = min(labconfig.MC_BLOCK_TRIALS, trials - start)
            coins = runner.draw_coins(CoinSources([seed, index, block]), count)
            answers = runner.answers(x, np.array([y], dtype=np.int64), coins)[0]
            wrong += int(np.count_nonzero(answers != truth))
        interval = wilson_interval(wrong, trials, confidence)
        results.append(PairError(x, y, truth, wrong / trials, wrong, trials, interval))
        _LOGGER.debug(f"{runner.spec.id}: pair ({x}, {y}) wrong {wrong}/{trials}")
    estimate = _summarize("montecarlo", runner, results, trials=trials, seed=seed, confidence=confidence)
    estimate.worst_upper = max((pair.ci[1] for pair in results), default=0.0)
    return estimate
