import json
from fractions import Fraction

import pytest

from reproduce import CRITERIA, FULL, QUICK, AcceptanceRun, CriterionResult, amplification, run_acceptance


def test_criteria_are_numbered_in_order():
    assert [number for number, _, _ in CRITERIA] == list(range(1, 15))


def test_quick_sizes_are_smaller():
    assert QUICK.mc_trials < FULL.mc_trials
    assert QUICK.xk_seeds < FULL.xk_seeds
    assert len(QUICK.corpus_classes) < len(FULL.corpus_classes)


@pytest.mark.parametrize("number", range(1, 15))
def test_quick_criterion_passes(number):
    run = run_acceptance(quick=True, seed=0, only=[number])
    assert [criterion.id for criterion in run.criteria] == [number]
    assert run.ok, run.criteria[0].details


def test_payload_is_deterministic_and_serializable():
    first = run_acceptance(quick=True, seed=0, only=[9, 14]).to_json()
    second = run_acceptance(quick=True, seed=0, only=[9, 14]).to_json()
    assert json.dumps(first, sort_keys=True, default=str) == json.dumps(second, sort_keys=True, default=str)
    assert first["total"] == 2


def test_failed_criterion_fails_run():
    run = AcceptanceRun(True, 0, [CriterionResult(1, "one", True), CriterionResult(2, "two", False)])
    assert not run
    assert run.to_json()["passed"] == 1
    assert "FAIL" in run.table()
    assert set(run.timing()) == {"1", "2"}


def test_amplification_upper_bounds_clear_delta():
    passed, details = amplification(QUICK, seed=0)
    assert passed
    for case in details.values():
        assert case["worstUpper"] <= float(Fraction(case["delta"]))
    assert details["oneSided"]["reps"] == 4
