"""
Acceptance suite
================

Fourteen desk-scale checks, one per result the lab reproduces. Each check returns whether it passed
and a JSON-ready dict of what it measured. ``--quick`` sizes keep the whole run short enough for
the end-to-end tests; the full sizes are the ones the results are stated for.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

try:
    from . import labconfig
    from .bounds import deterministic_complexity, max_mono_rectangle, rank_rational
    from .classes import (
        disjunction,
        eq_via_disj,
        eq_via_gt,
        lift_completeness,
        reduce_to_disj_from_zero_cover,
        single_cell_parts,
        space_eq_protocol,
        space_to_time_compile,
        verify_oracle_protocol,
        verify_reduction,
        verify_space_protocol,
    )
    from .directsum import (
        GBudget,
        hash_family_generate,
        lemma_sweep,
        nba_batched,
        nba_exhaustive,
        nba_family,
        prefix_allocate,
        random_edges,
        verify_family,
        xk_eq_sweep,
    )
    from .fnspace import build_named, co_disj_compose, rectangle_indicator
    from .protocol import metrics, verify
    from .protocol_builders import eq5_pair_function, eq5_pair_protocol, tab24_fluent, tab24_pair_function, tab24_pair_protocol
    from .randomized import (
        InnerProductEqRunner,
        PartitionEqRunner,
        PolyEqRunner,
        PrimeEqRunner,
        amplified_runner,
        derandomize_public,
        exact_error,
        lambda_cap,
        lambda_inv,
        mc_error,
        onesided_to_twosided,
        string_count,
        wilson_interval,
    )
    from .rewrite import balance_depth, pushdown_normalize, result_balance_report
    from .tree_corpus import LEAF_CLASSES, corpus
except ImportError:
    import labconfig
    from bounds import deterministic_complexity, max_mono_rectangle, rank_rational
    from classes import (
        disjunction,
        eq_via_disj,
        eq_via_gt,
        lift_completeness,
        reduce_to_disj_from_zero_cover,
        single_cell_parts,
        space_eq_protocol,
        space_to_time_compile,
        verify_oracle_protocol,
        verify_reduction,
        verify_space_protocol,
    )
    from directsum import (
        GBudget,
        hash_family_generate,
        lemma_sweep,
        nba_batched,
        nba_exhaustive,
        nba_family,
        prefix_allocate,
        random_edges,
        verify_family,
        xk_eq_sweep,
    )
    from fnspace import build_named, co_disj_compose, rectangle_indicator
    from protocol import metrics, verify
    from protocol_builders import eq5_pair_function, eq5_pair_protocol, tab24_fluent, tab24_pair_function, tab24_pair_protocol
    from randomized import (
        InnerProductEqRunner,
        PartitionEqRunner,
        PolyEqRunner,
        PrimeEqRunner,
        amplified_runner,
        derandomize_public,
        exact_error,
        lambda_cap,
        lambda_inv,
        mc_error,
        onesided_to_twosided,
        string_count,
        wilson_interval,
    )
    from rewrite import balance_depth, pushdown_normalize, result_balance_report
    from tree_corpus import LEAF_CLASSES, corpus

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sizes:
    exact_max_n: int = 3
    rank_max_n: int = 4
    rectangle_max_n: int = 3
    corpus_per_class: int = 1000
    corpus_classes: Tuple[int, ...] = LEAF_CLASSES
    innerprod_max_n: int = 10
    prime_max_n: int = 8
    poly_max_n: int = 6
    mc_trials: int = 100_000
    tab24_samples: int = 1_000_000
    lemma_leaves: int = 16
    lemma_k: int = 32
    xk_n: int = 32
    xk_seeds: int = 1024
    xk_sweep_k: int = 256
    xk_detection_ks: Tuple[int, ...] = (64, 256)
    nba_batched_n: int = 8
    nba_batched_ks: Tuple[int, ...] = (16, 64, 256)
    oracle_max_n: int = 8
    space_max_n: int = 12


FULL = Sizes()
QUICK = Sizes(
    corpus_per_class=2,
    corpus_classes=(4, 5, 6, 8, 12, 16, 24, 32, 48, 64),
    innerprod_max_n=6,
    prime_max_n=6,
    poly_max_n=4,
    mc_trials=20_000,
    tab24_samples=20_000,
    lemma_leaves=10,
    lemma_k=12,
    xk_seeds=64,
    xk_sweep_k=64,
    xk_detection_ks=(64,),
    nba_batched_ks=(16, 64),
    oracle_max_n=4,
    space_max_n=6,
)

# allocations up to this many copies are also checked codeword by codeword
VERIFY_ALLOCATION_MAX_K = 8
LAMBDA_TOLERANCE = 1e-9


@dataclass
class CriterionResult:
    id: int
    title: str
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"id": self.id, "title": self.title, "passed": self.passed, "details": self.details}


@dataclass
class AcceptanceRun:
    quick: bool
    seed: int
    criteria: List[CriterionResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(criterion.passed for criterion in self.criteria)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "quick": self.quick,
            "passed": sum(1 for criterion in self.criteria if criterion.passed),
            "total": len(self.criteria),
            "ok": self.ok,
            "criteria": [criterion.to_json() for criterion in self.criteria],
        }

    def timing(self) -> dict:
        """Seconds per criterion; kept out of the payload so reruns compare byte for byte."""
        return {str(criterion.id): round(criterion.seconds, 3) for criterion in self.criteria}

    def table(self) -> str:
        """Plain-text pass/fail table."""
        lines = [f"{'#':>2}  {'result':<6}  {'seconds':>8}  criterion"]
        for criterion in self.criteria:
            verdict = "PASS" if criterion.passed else "FAIL"
            lines.append(f"{criterion.id:>2}  {verdict:<6}  {criterion.seconds:>8.1f}  {criterion.title}")
        lines.append(f"{sum(1 for c in self.criteria if c.passed)}/{len(self.criteria)} passed")
        return "\n".join(lines)


def _answer_bit() -> int:
    return 1 if labconfig.COUNT_ANSWER_BIT else 0


def _fraction(value) -> str:
    return str(Fraction(value)) if isinstance(value, Fraction) else f"{float(value):.6g}"


# -- criteria --------------------------------------------------------------------------------------


def exact_complexities(sizes: Sizes, seed: int):
    values = {}
    passed = True
    for name in ("EQ", "GT", "DISJ"):
        for n in range(1, sizes.exact_max_n + 1):
            depth = deterministic_complexity(build_named(name, n)).value
            values[f"{name}:{n}"] = depth
            passed &= depth == n + _answer_bit()
    return passed, {"D": values}


def inner_product_rank(sizes: Sizes, seed: int):
    ranks = {n: rank_rational(build_named("IP", n)) for n in range(1, sizes.rank_max_n + 1)}
    return all(rank == 2**n - 1 for n, rank in ranks.items()), {"rankQ": {str(n): r for n, r in ranks.items()}}


def inner_product_rectangles(sizes: Sizes, seed: int):
    found = {}
    passed = True
    for n in range(1, sizes.rectangle_max_n + 1):
        ip = build_named("IP", n)
        zeros, _ = max_mono_rectangle(ip, 0)
        ones, _ = max_mono_rectangle(ip, 1)
        found[str(n)] = {"max0": zeros, "max1": ones}
        passed &= zeros == 2**n and ones == 2 ** (n - 1)
    return passed, found


def depth_balancing(sizes: Sizes, seed: int):
    trees = violations = 0
    worst_slack = None
    for tree, f in corpus(sizes.corpus_per_class, sizes.corpus_classes, seed):
        trees += 1
        limit = 3 * math.ceil(math.log2(tree.leaves))
        balanced = balance_depth(tree, f)
        depth = metrics(balanced, count_answer_bit=False).depth
        if depth > limit or not verify(balanced, f).ok:
            violations += 1
            _LOGGER.warning(f"Balancing a {tree.leaves}-leaf tree reached depth {depth}, limit {limit}")
        slack = limit - depth
        worst_slack = slack if worst_slack is None else min(worst_slack, slack)
    return not violations, {"trees": trees, "violations": violations, "smallestSlack": worst_slack}


def result_balancing(sizes: Sizes, seed: int):
    trees = violations = 0
    failed: Dict[str, int] = {}
    for tree, f in corpus(sizes.corpus_per_class, sizes.corpus_classes, seed):
        trees += 1
        try:
            normalized, _ = pushdown_normalize(tree, f)
        except RuntimeError as error:
            violations += 1
            _LOGGER.warning(f"Normalization failed: {error}")
            continue
        report = result_balance_report(normalized)
        if not report.ok:
            violations += 1
            for name, check in report.checks.items():
                if check is False:
                    failed[name] = failed.get(name, 0) + 1
    return not violations, {"trees": trees, "violations": violations, "failedChecks": failed}


def randomized_equality(sizes: Sizes, seed: int):
    details: Dict[str, Dict[str, str]] = {"innerprod": {}, "partition": {}, "prime": {}, "poly": {}}
    passed = True
    for n in range(1, sizes.innerprod_max_n + 1):
        worst = exact_error(InnerProductEqRunner(n), build_named("EQ", n)).worst_pair_error
        details["innerprod"][str(n)] = _fraction(worst)
        passed &= worst == Fraction(1, 2)
    for n in range(1, labconfig.PARTITION_EXACT_MAX_N + 1):
        for k in (2, 3, 4):
            worst = exact_error(PartitionEqRunner(n, k), build_named("EQ", n)).worst_pair_error
            details["partition"][f"{n},{k}"] = _fraction(worst)
            passed &= worst == Fraction(1, k)
    for n in range(2, sizes.prime_max_n + 1):
        runner = PrimeEqRunner(n)
        worst = exact_error(runner, build_named("EQ", n)).worst_pair_error
        details["prime"][str(n)] = _fraction(worst)
        passed &= worst <= runner.spec.nominal_error and (n != 4 or worst == 0)
    for n in range(2, sizes.poly_max_n + 1):
        runner = PolyEqRunner(n, n)
        worst = exact_error(runner, build_named("EQ", n)).worst_pair_error
        details["poly"][str(n)] = _fraction(worst)
        passed &= worst <= Fraction(n - 1, runner.p)
    return passed, details


def amplification(sizes: Sizes, seed: int):
    eq = build_named("EQ", 4)
    cases = (
        ("twoSided", onesided_to_twosided(InnerProductEqRunner(4)), Fraction(1, 10)),
        ("oneSided", InnerProductEqRunner(4), Fraction(1, 8)),
    )
    details = {}
    passed = True
    for name, base, delta in cases:
        runner = amplified_runner(base, delta / labconfig.AMPLIFICATION_HEADROOM)
        estimate = mc_error(runner, eq, sizes.mc_trials, seed)
        # every pair's upper confidence bound must clear delta
        holds = estimate.worst_upper <= float(delta)
        details[name] = {
            "reps": runner.reps,
            "delta": str(delta),
            "worst": float(estimate.worst_pair_error),
            "worstUpper": estimate.worst_upper,
            "holds": holds,
        }
        passed &= holds
    return passed, details


def derandomization(sizes: Sizes, seed: int):
    delta = Fraction(1, 4)
    result = derandomize_public(build_named("EQ", 4), InnerProductEqRunner(4), delta, seed)
    expected_t = string_count(4, delta)
    details = result.to_json()
    details.pop("strings", None)
    return result.ok and result.t == expected_t, details


def direct_sum_exhibits(sizes: Sizes, seed: int):
    eq5 = eq5_pair_protocol()
    eq5_depth = metrics(eq5).depth
    fluent = metrics(tab24_fluent())
    pair = tab24_pair_protocol()
    pair_depth = metrics(pair).depth
    pair_check = verify(pair, tab24_pair_function(), mode="sampled", seed=seed, trials=sizes.tab24_samples)
    fluent_target = 4 + math.log2(5 / 4)
    checks = {
        "eq5Depth": eq5_depth == 7 and verify(eq5, eq5_pair_function()).ok,
        "tab24FluentLeaves": fluent.leaves == 20 and math.isclose(fluent.fluent_cost, fluent_target),
        "tab24PairDepth": pair_depth == 11 and pair_check.ok,
        "fluentBelowPair": 2 * fluent_target <= pair_depth,
    }
    details = {
        "eq5PairDepth": eq5_depth,
        "tab24FluentLeaves": fluent.leaves,
        "tab24FluentCost": fluent.fluent_cost,
        "tab24PairDepth": pair_depth,
        "tab24PairSamples": pair_check.checked,
        "twiceFluent": 2 * fluent_target,
        "checks": checks,
    }
    return all(checks.values()), details


def counting_lemma(sizes: Sizes, seed: int):
    budget = GBudget(sizes.lemma_leaves)
    sweep = lemma_sweep(budget, sizes.lemma_leaves, sizes.lemma_k)
    allocations = failures = 0
    for leaves in range(2, sizes.lemma_leaves + 1):
        for M in range(1, leaves):
            for k in range(1, sizes.lemma_k + 1):
                if not budget.check(k, M, leaves - M):
                    continue
                allocation = prefix_allocate(k, M, leaves - M, budget)
                allocations += 1
                if not allocation or (k <= VERIFY_ALLOCATION_MAX_K and not allocation.verify()):
                    failures += 1
    details = {"sweep": sweep.to_json(), "allocations": allocations, "allocationFailures": failures}
    return sweep.ok and not failures, details


def _detection_bound(undetected: float, runs: int, wrong: int, bound: float) -> Tuple[bool, float]:
    trials = runs * wrong
    low, _ = wilson_interval(round(undetected * trials), trials)
    return low <= bound, low


def xk_equality(sizes: Sizes, seed: int):
    seeds = range(seed, seed + sizes.xk_seeds)
    k = sizes.xk_sweep_k
    sweep = xk_eq_sweep(k, sizes.xk_n, k // 4, seeds)
    checks = {"soundness": sweep.false_unequal == 0, "bitsPerCopy": sweep.max_bits <= 64 * k}
    details: Dict[str, object] = {"cost": sweep.to_json()}
    for k in sizes.xk_detection_ks:
        for doubled, bound in ((False, 2 / k), (True, 4 / k**2)):
            if k == sweep.k and not doubled:
                run = sweep
            else:
                run = xk_eq_sweep(k, sizes.xk_n, k // 4, seeds, doubled=doubled)
            holds, low = _detection_bound(run.undetected_frequency, run.runs, run.wrong, bound)
            name = f"{'doubled' if doubled else 'single'}:{k}"
            checks[name] = holds and run.false_unequal == 0
            details[name] = {"undetectedFrequency": run.undetected_frequency, "wilsonLower": low, "bound": bound}
    details["checks"] = checks
    return all(checks.values()), details


def nba(sizes: Sizes, seed: int):
    interactive = nba_exhaustive(4, "interactive")
    two_round = nba_exhaustive(4, "tworound", nba_family(4, seed))
    family = hash_family_generate(16, 2, seed)
    half_injective = verify_family(family) and family.exhaustive
    checks = {"interactive": interactive.ok, "twoRound": two_round.ok, "hashFamily": half_injective}
    details: Dict[str, object] = {"interactive": interactive.to_json(), "twoRound": two_round.to_json(), "family": family.to_json()}
    batched_family = nba_family(sizes.nba_batched_n, seed)
    for k in sizes.nba_batched_ks:
        edges, xs = random_edges(sizes.nba_batched_n, k, seed)
        run = nba_batched(sizes.nba_batched_n, k, edges, xs, batched_family)
        expected = [0 if x == u else 1 for (u, _), x in zip(edges, xs)]
        checks[f"batched:{k}"] = run.winners == expected and run.bits["assignment"] <= 2 * k
        details[f"batched:{k}"] = {"bits": run.bits, "functions": len(run.functions), "fallback": run.fallback}
    details["checks"] = checks
    return all(checks.values()), details


def oracles_and_reductions(sizes: Sizes, seed: int):
    checks: Dict[str, bool] = {}
    for n in range(1, sizes.oracle_max_n + 1):
        eq = build_named("EQ", n)
        by_gt = verify_oracle_protocol(eq_via_gt(n), eq)
        by_disj = verify_oracle_protocol(eq_via_disj(n), eq)
        checks[f"GT:{n}"] = by_gt.ok and by_gt.max_cost == 2
        checks[f"DISJ:{n}"] = by_disj.ok and by_disj.max_cost == 1
    for name in ("EQ", "IP"):
        f = build_named(name, 2)
        hx, hy, m = reduce_to_disj_from_zero_cover(f)
        checks[f"zeroCover:{name}:2"] = verify_reduction(f, build_named("DISJ", m), hx, hy).ok
    and_gate = rectangle_indicator(1, 1, [1], [1])
    for name in ("EQ", "IP"):
        f = build_named(name, 2)
        parts = single_cell_parts(f)
        hx, hy = lift_completeness(and_gate, parts)
        lifted = verify_reduction(disjunction([part[0] for part in parts]), co_disj_compose(and_gate, len(parts)), hx, hy)
        checks[f"lift:{name}:2"] = lifted.ok and disjunction([part[0] for part in parts]).agrees_with(f)
    return all(checks.values()), {"checks": checks}


def space_model(sizes: Sizes, seed: int):
    checks: Dict[str, bool] = {}
    widths = {}
    for n in range(2, sizes.space_max_n + 1):
        sp = space_eq_protocol(n)
        widths[str(n)] = sp.width
        checks[f"SEQ:{n}"] = sp.width == math.ceil(math.log2(n)) + 2 and verify_space_protocol(sp, build_named("EQ", n)).ok
    compiled = space_to_time_compile(space_eq_protocol(4))
    checks["compiled"] = compiled.verify().ok and compiled.bits <= compiled.protocol.width << compiled.protocol.width
    checks["lambdaBound"] = bool(compiled.lambda_check(4 + _answer_bit())["holds"])
    worst = 0.0
    for exponent in range(1, 41):
        t = 2.0**exponent
        worst = max(worst, abs(lambda_cap(lambda_inv(t)) - t) / t)
        s = exponent / 4
        worst = max(worst, abs(lambda_inv(lambda_cap(s)) - s) / s) if lambda_cap(s) >= 2 else worst
    checks["lambdaIdentities"] = worst <= LAMBDA_TOLERANCE
    return all(checks.values()), {"S": widths, "compiledBits": compiled.bits, "lambdaRelativeError": worst, "checks": checks}


CRITERIA: Sequence[Tuple[int, str, Callable[[Sizes, int], Tuple[bool, dict]]]] = (
    (1, "Exact D of EQ, GT and DISJ", exact_complexities),
    (2, "Rational rank of IP", inner_product_rank),
    (3, "Largest monochromatic rectangles of IP", inner_product_rectangles),
    (4, "Depth balancing on the random tree corpus", depth_balancing),
    (5, "Result balancing on the random tree corpus", result_balancing),
    (6, "Exact errors of the randomized equality protocols", randomized_equality),
    (7, "Amplification under Monte Carlo", amplification),
    (8, "Public strings for the inner-product protocol", derandomization),
    (9, "Direct-sum exhibits (EQ5 pair, TAB24)", direct_sum_exhibits),
    (10, "Counting lemma sweep and prefix allocation", counting_lemma),
    (11, "Parallel equality with track-back", xk_equality),
    (12, "NBA protocols and hash family", nba),
    (13, "Oracle protocols and reductions", oracles_and_reductions),
    (14, "Space-bounded equality and its compilation", space_model),
)


def run_acceptance(quick: bool = False, seed: Optional[int] = None, only: Optional[Sequence[int]] = None) -> AcceptanceRun:
    """Runs the criteria in order (all of them unless ``only`` names some) and collects the results."""
    seed = labconfig.default_seed() if seed is None else seed
    sizes = QUICK if quick else FULL
    run = AcceptanceRun(quick, seed)
    for number, title, check in CRITERIA:
        if only and number not in only:
            continue
        started = time.perf_counter()
        passed, details = check(sizes, seed)
        elapsed = time.perf_counter() - started
        run.criteria.append(CriterionResult(number, title, bool(passed), details, elapsed))
        level = logging.INFO if passed else logging.WARNING
        _LOGGER.log(level, f"Criterion {number} ({title}): {'passed' if passed else 'FAILED'} in {elapsed:.1f}s")
    return run
