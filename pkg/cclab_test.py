import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent


def run_cli(*args, env=None):
    environment = dict(os.environ)
    environment.pop("CCLAB_SEED", None)
    environment.update(env or {})
    return subprocess.run(
        [sys.executable, str(REPO / "cclab.py"), *map(str, args)],
        cwd=REPO,
        env=environment,
        capture_output=True,
        text=True,
        timeout=600,
    )


def payload_of(*args, env=None):
    result = run_cli(*args, env=env)
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["version"]
    assert report["schemaVersion"] == 1
    return report["payload"]


def test_fn_counts():
    payload = payload_of("fn", "--fn", "EQ:3")
    assert payload["function"]["ones"] == 8
    assert payload["function"]["zeros"] == 56


def test_fn_roundtrip_through_file(tmp_path):
    stored = tmp_path / "gt2.ccfn"
    payload_of("fn", "--fn", "GT:2", "--complement", "--out", stored)
    payload = payload_of("fn", "--in", stored, "--matrix")
    assert payload["function"]["ones"] == 10
    assert payload["matrix"][0] == [1, 1, 1, 1]


def test_fn_product():
    payload = payload_of("fn", "--fn", "EQ:1", "--product", "2")
    assert payload["function"]["nA"] == 2
    assert payload["function"]["rangeBits"] == 2


def test_bad_builder_is_usage_error():
    result = run_cli("fn", "--fn", "NOPE:3")
    assert result.returncode == 2
    assert "invalid function" in result.stderr


def test_bad_seed_environment_is_usage_error():
    result = run_cli("fn", "--fn", "EQ:1", env={"CCLAB_SEED": "abc"})
    assert result.returncode == 2


def test_protocol_build_and_verify(tmp_path):
    tree = tmp_path / "eq3.cctree"
    built = payload_of("protocol", "build", "--kind", "bitwise-eq", "--n", "3", "--out", tree)
    assert built["metrics"]["depth"] == 4
    payload = payload_of("protocol", "verify", "--tree", tree, "--fn", "EQ:3")
    assert payload["verification"]["ok"]


def test_protocol_verify_failure_exits_one(tmp_path):
    tree = tmp_path / "eq2.cctree"
    payload_of("protocol", "build", "--kind", "bitwise-eq", "--n", "2", "--out", tree)
    result = run_cli("protocol", "verify", "--tree", tree, "--fn", "GT:2")
    assert result.returncode == 1
    assert not json.loads(result.stdout)["payload"]["verification"]["ok"]


def test_bounds_inner_product():
    payload = payload_of("bounds", "--fn", "IP:2")
    assert payload["bounds"]["rankQ"] == 3
    assert payload["ok"]


def test_bounds_refusal_is_reported():
    payload = payload_of("bounds", "--fn", "EQ:8")
    assert payload["refusals"]


def test_bounds_with_measures():
    payload = payload_of("bounds", "--fn", "EQ:2", "--measures")
    assert "classMeasures" in payload


@pytest.mark.parametrize("mode", ["depth", "result"])
def test_balance(tmp_path, mode):
    tree = tmp_path / "eq3.cctree"
    rewritten = tmp_path / "rewritten.cctree"
    payload_of("protocol", "build", "--kind", "bitwise-eq", "--n", "3", "--out", tree)
    result = run_cli("balance", "--tree", tree, "--fn", "EQ:3", "--mode", mode, "--out", rewritten)
    assert result.returncode in (0, 1), result.stderr
    payload = json.loads(result.stdout)["payload"]
    assert payload["trace"]["mode"] == mode
    assert payload_of("protocol", "verify", "--tree", rewritten, "--fn", "EQ:3")["verification"]["ok"]


def test_balance_rejects_wrong_function(tmp_path):
    tree = tmp_path / "eq2.cctree"
    payload_of("protocol", "build", "--kind", "bitwise-eq", "--n", "2", "--out", tree)
    result = run_cli("balance", "--tree", tree, "--fn", "GT:2")
    assert result.returncode == 1
    assert "error" in result.stderr


def test_rand_sim_inner_product_exact():
    payload = payload_of("rand", "sim", "--proto", "innerprod", "--n", "3", "--mode", "exact")
    assert payload["estimate"]["worstPairError"]["exact"] == "1/2"
    assert payload["protocol"]["errorModel"] == "one-sided-0"


def test_rand_sim_monte_carlo_amplified():
    payload = payload_of(
        "rand", "sim", "--proto", "innerprod", "--n", "4", "--mode", "mc:2000", "--amplify", "1/8"
    )
    assert payload["estimate"]["mode"] == "montecarlo"
    assert payload["estimate"]["trials"] == 2000


def test_rand_sim_bad_mode():
    assert run_cli("rand", "sim", "--proto", "prime", "--n", "4", "--mode", "mc:x").returncode == 2


def test_rand_bounds_and_derandomize():
    bounds = payload_of("rand", "bounds", "--n", "8")
    assert bounds
    derandomized = payload_of("rand", "derandomize", "--n", "3", "--delta", "1/4")
    assert derandomized["result"]["ok"]
    assert "private" in derandomized


def test_dsum_xk_eq():
    payload = payload_of("dsum", "xk-eq", "--k", "16", "--n", "8", "--wrong", "4", "--seeds", "0..7")
    assert payload["runs"] == 8
    assert payload["falseUnequal"] == 0


@pytest.mark.parametrize("mode", ["oneway", "interactive", "tworound", "batched"])
def test_dsum_nba(mode):
    payload = payload_of("dsum", "nba", "--n", "4", "--k", "16", "--mode", mode)
    assert payload["correct"]


def test_dsum_nba_exhaustive():
    payload = payload_of("dsum", "nba", "--n", "3", "--mode", "interactive", "--exhaustive")
    assert payload["ok"]
    assert payload["instances"] == 56


def test_dsum_gbudget():
    payload = payload_of("dsum", "gbudget", "--lmax", "8", "--kmax", "8", "--allocate", "4", "2", "3")
    assert payload["sweep"]["ok"]
    assert "allocation" in payload


@pytest.mark.parametrize("oracle, cost", [("GT", 2), ("DISJ", 1)])
def test_oracle(oracle, cost):
    payload = payload_of("oracle", "--fn", "EQ:4", "--oracle", oracle)
    assert payload["check"]["ok"]
    assert payload["check"]["maxCost"] == cost


def test_reduce_zero_cover():
    payload = payload_of("reduce", "--from", "EQ:2", "--to", "DISJ:4", "--check")
    assert payload["m"] == 4
    assert payload["check"]["ok"]


def test_space_with_compilation_and_trace():
    payload = payload_of("space", "--fn", "EQ:3", "--compile", "--trace", "5", "5")
    assert payload["protocol"]["S"] == 4
    assert payload["check"]["ok"]
    assert payload["compiled"]["check"]["ok"]
    assert payload["compiled"]["lambda"]["holds"]
    assert payload["trace"]["value"] == 1


def test_space_block_model():
    payload = payload_of("space", "--fn", "EQ:4", "--model", "block")
    assert payload["check"]["ok"]


def test_flags_after_subcommand():
    before = payload_of("--seed", "9", "dsum", "nba", "--n", "4", "--k", "16", "--mode", "batched")
    after = payload_of("dsum", "nba", "--n", "4", "--k", "16", "--mode", "batched", "--seed", "9")
    assert before == after


def test_answer_bit_flag_keeps_constant_leaf_costs():
    counted = payload_of("bounds", "--fn", "EQ:2")
    uncounted = payload_of("--no-count-answer-bit", "bounds", "--fn", "EQ:2")
    # search witnesses end in constant leaves, which are never transmitted
    assert counted["exact"]["D"] == uncounted["exact"]["D"] == 3


def test_deterministic_output():
    args = ("--seed", "3", "dsum", "xk-eq", "--k", "32", "--n", "8", "--wrong", "8", "--seeds", "0..3")
    assert payload_of(*args) == payload_of(*args)


def test_reproduce_quick_with_pdf(tmp_path):
    pdf = tmp_path / "acceptance.pdf"
    result = run_cli("reproduce", "--quick", "--pdf", pdf)
    assert result.returncode == 0, result.stdout + result.stderr
    report = json.loads(result.stdout)
    assert report["payload"]["total"] == 14
    assert report["payload"]["ok"]
    assert pdf.read_bytes().startswith(b"%PDF")


def test_reproduce_text_table():
    result = run_cli("reproduce", "--quick", "--only", "9,14", "--format", "text")
    assert result.returncode == 0, result.stderr
    assert "2/2 passed" in result.stdout
