"""
cclab command line
==================

Every subcommand prints one JSON report on standard output: the command echo, the seed, the
version and a payload. Exit codes: 0 on success, 1 when a verification or acceptance check fails or
a computation is refused, 2 on usage errors.

Examples:
    python cclab.py bounds --fn IP:2
    python cclab.py rand sim --proto innerprod --n 3 --mode exact
    python cclab.py --seed 7 dsum xk-eq --k 64 --n 16 --wrong 16 --seeds 0..31
    python cclab.py reproduce --quick --pdf acceptance.pdf
"""

import argparse
import json
import logging
import math
import sys
import time
from fractions import Fraction

import labconfig
from bounds import SearchBudgetExceeded, bound_report, deterministic_complexity
from classes import (
    measures_report,
    sa_block_protocol,
    self_oracle,
    space_bracket,
    space_eq_protocol,
    space_eval,
    space_to_time_compile,
    verify_oracle_protocol,
    verify_reduction,
    verify_space_protocol,
    reduce_to_disj_from_zero_cover,
)
from classes.oracles import ORACLE_CONSTRUCTIONS, complement_concat_maps
from directsum import (
    GBudget,
    lemma_sweep,
    nba_batched,
    nba_exhaustive,
    nba_family,
    nba_interactive,
    nba_one_way,
    nba_two_round,
    prefix_allocate,
    random_edges,
    xk_eq_sweep,
)
from fnspace import SizeLimitExceeded, co_disj_compose, complement, parse_builder, product_xk, read_function, wedge_k, write_function
from protocol import metrics, read_tree, verify, write_tree
from protocol_builders import bitwise_eq, bitwise_gt, eq5_pair_protocol, trivial_protocol
from randomized import (
    InnerProductEqRunner,
    PrivateFromPublicRunner,
    amplified_runner,
    build_runner,
    derandomize_public,
    exact_error,
    mc_error,
    onesided_to_twosided,
    rnd_lower_bound_values,
)
from reproduce import run_acceptance
from rewrite import balance_depth, pushdown_normalize, result_balance_report
from tree_corpus import random_tree

_LOGGER = logging.getLogger("cclab")

REFUSALS = (SizeLimitExceeded, SearchBudgetExceeded)
TREE_KINDS = ("trivial", "bitwise-eq", "bitwise-gt", "eq5-pair", "random")
NBA_MODES = ("oneway", "interactive", "tworound", "batched")
REDUCTION_MAPS = ("zero-cover", "identity", "complement-concat")
# functions with at most this many cells are printed as a matrix by ``fn --matrix``
PRINT_MATRIX_CELLS = 4096


# -- argument types --------------------------------------------------------------------------------


def function_arg(text):
    try:
        return parse_builder(text)
    except (ValueError, KeyError) as error:
        raise argparse.ArgumentTypeError(f"invalid function {text!r}: {error}")


def mode_arg(text):
    """``exact`` or ``mc:TRIALS``."""
    if text == "exact":
        return ("exact", None)
    name, _, trials = text.partition(":")
    if name == "mc" and trials.isdigit() and int(trials) > 0:
        return ("mc", int(trials))
    raise argparse.ArgumentTypeError(f"mode must be 'exact' or 'mc:TRIALS', got {text!r}")


def seeds_arg(text):
    """``S`` or an inclusive range ``S0..S1``."""
    first, dots, last = text.partition("..")
    try:
        start = int(first)
        stop = int(last) if dots else start
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be S or S0..S1, got {text!r}")
    if stop < start:
        raise argparse.ArgumentTypeError(f"empty seed range {text!r}")
    return range(start, stop + 1)


def fraction_arg(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction such as 1/3, got {text!r}")
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"expected a value strictly between 0 and 1, got {text!r}")
    return value


def criteria_arg(text):
    try:
        chosen = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected criterion numbers such as 1,4,9, got {text!r}")
    return chosen


# -- subcommands -----------------------------------------------------------------------------------


def _function_json(f):
    result = {
        "name": f.name,
        "nA": f.n_a,
        "nB": f.n_b,
        "rangeBits": f.range_bits,
        "dense": f.is_dense,
        "partial": f.is_partial,
    }
    if f.is_dense:
        result["cells"] = f.cells
        if f.is_boolean:
            result["ones"] = f.count(1)
            result["zeros"] = f.count(0)
    return result


def cmd_fn(args):
    if args.input:
        with open(args.input) as stream:
            f = read_function(stream, name=args.input)
    else:
        f = args.fn
    if args.complement:
        f = complement(f)
    if args.product:
        f = product_xk(f, args.product)
    elif args.wedge:
        f = wedge_k(f, args.wedge)
    elif args.codisj:
        f = co_disj_compose(f, args.codisj)
    payload = {"function": _function_json(f)}
    if args.matrix:
        if not f.is_dense or f.cells > PRINT_MATRIX_CELLS:
            raise SizeLimitExceeded(f"{f.name} has {f.cells} cells; --matrix prints at most {PRINT_MATRIX_CELLS}")
        payload["matrix"] = f.matrix.tolist()
    if args.out:
        with open(args.out, "w") as stream:
            write_function(f, stream)
        payload["written"] = args.out
    return payload, True


def _load_tree(path):
    with open(path) as stream:
        return read_tree(stream)


def cmd_protocol_verify(args):
    tree = _load_tree(args.tree)
    result = verify(tree, args.fn, mode=args.mode, seed=args.seed, trials=args.trials)
    payload = {"function": args.fn.name, "verification": result.to_json(), "metrics": metrics(tree).to_json()}
    return payload, result.ok


def cmd_protocol_build(args):
    if args.kind == "trivial":
        if args.fn is None:
            raise ValueError("--kind trivial needs --fn")
        tree = trivial_protocol(args.fn)
    elif args.kind == "bitwise-eq":
        tree = bitwise_eq(args.n)
    elif args.kind == "bitwise-gt":
        tree = bitwise_gt(args.n)
    elif args.kind == "eq5-pair":
        tree = eq5_pair_protocol()
    else:
        tree = random_tree(args.leaves, args.seed)
    with open(args.out, "w") as stream:
        write_tree(tree, stream)
    return {"kind": args.kind, "written": args.out, "metrics": metrics(tree).to_json()}, True


def cmd_bounds(args):
    report = bound_report(args.fn, limit_bits=args.exact_limit, seed=args.seed)
    payload = report.to_json()
    ok = report.ok
    if args.measures:
        measures = measures_report(args.fn, limit_bits=args.exact_limit)
        payload["classMeasures"] = measures.to_json()
        ok = ok and measures.ok
    return payload, ok


def cmd_balance(args):
    tree = _load_tree(args.tree)
    f = args.fn
    before = metrics(tree).to_json()
    if args.mode == "depth":
        rewritten = balance_depth(tree, f)
        bound = 3 * math.ceil(math.log2(tree.leaves)) if tree.leaves > 1 else 0
        depth = metrics(rewritten, count_answer_bit=False).depth
        trace = {"mode": "depth", "depthBound": bound, "depth": depth, "verified": verify(rewritten, f).ok}
        ok = depth <= bound and trace["verified"]
    else:
        rewritten, steps = pushdown_normalize(tree, f)
        report = result_balance_report(rewritten)
        trace = steps.to_json()
        trace["mode"] = "result"
        trace["report"] = report.to_json()
        ok = report.ok
    if args.out:
        with open(args.out, "w") as stream:
            write_tree(rewritten, stream)
    return {"before": before, "after": metrics(rewritten).to_json(), "trace": trace}, ok


def cmd_rand_sim(args):
    runner = build_runner(args.proto, args.n, k=args.k, m=args.m, reps=args.reps)
    if args.twosided:
        runner = onesided_to_twosided(runner)
    if args.amplify is not None:
        runner = amplified_runner(runner, args.amplify)
    eq = parse_builder(f"EQ:{args.n}")
    mode, trials = args.mode
    if mode == "exact":
        estimate = exact_error(runner, eq)
    else:
        estimate = mc_error(runner, eq, trials, args.seed)
    payload = {
        "protocol": runner.spec.to_json(),
        "costBits": runner.bits_used(),
        "estimate": estimate.to_json(include_pairs=args.pairs),
    }
    return payload, True


def cmd_rand_bounds(args):
    return rnd_lower_bound_values(args.n, args.eps, parse_builder(f"EQ:{args.n}")), True


def cmd_rand_derandomize(args):
    eq = parse_builder(f"EQ:{args.n}")
    runner = InnerProductEqRunner(args.n)
    result = derandomize_public(eq, runner, args.delta, args.seed)
    payload = {"result": result.to_json()}
    if result.ok:
        private = PrivateFromPublicRunner.from_result(runner, result)
        payload["private"] = {"protocol": private.spec.to_json(), "costBits": private.bits_used()}
    return payload, result.ok


def cmd_dsum_xk(args):
    sweep = xk_eq_sweep(args.k, args.n, args.wrong, args.seeds, doubled=args.doubled)
    return sweep.to_json(), sweep.false_unequal == 0


def cmd_dsum_nba(args):
    n, k = args.n, args.k
    if args.exhaustive:
        family = nba_family(n, args.seed) if args.mode == "tworound" else None
        check = nba_exhaustive(n, args.mode, family)
        return check.to_json(), check.ok
    edges, xs = random_edges(n, k, args.seed)
    expected = [0 if x == u else 1 for (u, _), x in zip(edges, xs)]
    payload = {"mode": args.mode, "n": n, "k": k}
    if args.mode == "batched":
        run = nba_batched(n, k, edges, xs, nba_family(n, args.seed))
        payload.update(run.to_json())
        payload["correct"] = run.winners == expected
        return payload, payload["correct"]
    family = nba_family(n, args.seed) if args.mode == "tworound" else None
    winners = []
    bits = 0
    for (u, v), x in zip(edges, xs):
        if args.mode == "oneway":
            message = nba_one_way(n, x)
            winners.append(0 if int(message, 2) == u else 1)
            bits += len(message)
        elif args.mode == "interactive":
            winner, cost = nba_interactive(n, x, u, v)
            winners.append(winner)
            bits += cost
        else:
            winner, cost = nba_two_round(n, x, u, v, family)
            winners.append(winner)
            bits += cost
    payload.update({"totalBits": bits, "correct": winners == expected})
    return payload, payload["correct"]


def cmd_dsum_gbudget(args):
    budget = GBudget(args.lmax, args.rule)
    sweep = lemma_sweep(budget, args.lmax, args.kmax)
    payload = {"budget": budget.to_json(), "sweep": sweep.to_json()}
    ok = sweep.ok
    if args.allocate:
        k, M, N = args.allocate
        allocation = prefix_allocate(k, M, N, budget)
        payload["allocation"] = allocation.to_json()
        ok = ok and allocation.ok
    return payload, ok


def cmd_oracle(args):
    f = args.fn
    if args.oracle == "SELF":
        op = self_oracle(f)
    else:
        op = ORACLE_CONSTRUCTIONS[args.oracle](f.n_a)
    check = verify_oracle_protocol(op, f)
    payload = {
        "function": f.name,
        "protocol": op.name,
        "oracle": op.oracle.name,
        "queries": op.queries,
        "cost": op.cost(),
        "check": check.to_json(),
    }
    return payload, check.ok


def cmd_reduce(args):
    source, target = args.source, args.target
    payload = {"from": source.name, "to": target.name, "via": args.via}
    if args.via == "zero-cover":
        hx, hy, m = reduce_to_disj_from_zero_cover(source)
        payload["m"] = m
    elif args.via == "complement-concat":
        hx, hy = complement_concat_maps(source.n_a)
    else:
        hx = hy = (lambda value: value)
    if not args.check:
        return payload, True
    check = verify_reduction(source, target, hx, hy, seed=args.seed)
    payload["check"] = check.to_json()
    return payload, check.ok


def cmd_space(args):
    f = args.fn
    n = f.n_a
    if args.model == "block":
        sp = sa_block_protocol(n, f)
    else:
        sp = space_eq_protocol(n)
    check = verify_space_protocol(sp, f)
    payload = {"protocol": sp.to_json(), "check": check.to_json()}
    ok = check.ok
    if args.model == "seq":
        payload["bracket"] = space_bracket(n)
    if args.trace:
        steps = []
        value, count = space_eval(sp, args.trace[0], args.trace[1], steps)
        payload["trace"] = {"value": value, "steps": count, "contents": [[owner, content] for owner, content in steps]}
    if args.compile:
        scheme = space_to_time_compile(sp)
        compiled = scheme.verify()
        payload["compiled"] = {"bits": scheme.bits, "check": compiled.to_json()}
        try:
            depth = deterministic_complexity(f, limit_bits=args.exact_limit).value
            payload["compiled"]["lambda"] = scheme.lambda_check(depth)
            ok = ok and payload["compiled"]["lambda"]["holds"]
        except REFUSALS as error:
            payload["compiled"]["refusals"] = {"D": str(error)}
        ok = ok and compiled.ok
    return payload, ok


def cmd_reproduce(args):
    run = run_acceptance(quick=args.quick, seed=args.seed, only=args.only)
    if args.pdf:
        from report_pdf import write_report_pdf

        write_report_pdf(args.pdf, run.criteria, args.seed, labconfig.VERSION, args.quick)
    payload = run.to_json()
    if args.pdf:
        payload["pdf"] = args.pdf
    return payload, run.ok, run


# -- parser ----------------------------------------------------------------------------------------


def _add_global_options(parser, suppress):
    """Options accepted before and after the subcommand; the subcommand copies never override a default."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument(
        "--seed", type=int, default=default(None), help="Seed for every random choice (default: $CCLAB_SEED or 0)"
    )
    parser.add_argument(
        "--exact-limit",
        type=int,
        default=default(None),
        help="Total input bits (nA + nB) up to which exact searches run",
    )
    parser.add_argument(
        "--count-answer-bit",
        action=argparse.BooleanOptionalAction,
        default=default(None),
        help="Count the final answer bit in worst-case costs (default: on)",
    )
    parser.add_argument("--format", choices=("json", "text"), default=default("json"), help="Output format (default: json)")
    parser.add_argument("--verbose", action="store_true", default=default(False), help="Log debug messages on standard error")


def build_parser():
    parser = argparse.ArgumentParser(prog="cclab", description="Desk-scale communication complexity laboratory")
    _add_global_options(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_options(shared, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    fn = commands.add_parser("fn", parents=[shared], help="Build, transform and store functions")
    source = fn.add_mutually_exclusive_group(required=True)
    source.add_argument("--fn", type=function_arg, help="Builder such as EQ:3, IP:2, TAB24, CONST1:2")
    source.add_argument("--in", dest="input", help="Read a ccfn v1 file")
    fn.add_argument("--complement", action="store_true", help="Negate the function")
    compose = fn.add_mutually_exclusive_group()
    compose.add_argument("--product", type=int, help="k parallel copies, k output bits")
    compose.add_argument("--wedge", type=int, help="Conjunction of k copies")
    compose.add_argument("--codisj", type=int, help="1 iff some of the m copies is 1")
    fn.add_argument("--matrix", action="store_true", help="Include the value matrix in the report")
    fn.add_argument("--out", help="Write the function as ccfn v1")
    fn.set_defaults(handler=cmd_fn)

    protocol = commands.add_parser("protocol", help="Protocol trees")
    protocol_commands = protocol.add_subparsers(dest="action", required=True)
    check = protocol_commands.add_parser("verify", parents=[shared], help="Check a tree against a function")
    check.add_argument("--tree", required=True, help="cctree v1 file")
    check.add_argument("--fn", type=function_arg, required=True)
    check.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    check.add_argument("--trials", type=int, help="Pairs for sampled verification")
    check.set_defaults(handler=cmd_protocol_verify)
    build = protocol_commands.add_parser("build", parents=[shared], help="Write one of the built-in trees")
    build.add_argument("--kind", choices=TREE_KINDS, required=True)
    build.add_argument("--fn", type=function_arg, help="Function for --kind trivial")
    build.add_argument("--n", type=int, default=2, help="Input bits for the bitwise trees (default: 2)")
    build.add_argument("--leaves", type=int, default=8, help="Leaves of a random tree (default: 8)")
    build.add_argument("--out", required=True, help="cctree v1 file to write")
    build.set_defaults(handler=cmd_protocol_build)

    bounds = commands.add_parser("bounds", parents=[shared], help="Lower bounds and exact measures")
    bounds.add_argument("--fn", type=function_arg, required=True)
    bounds.add_argument("--measures", action="store_true", help="Add nondeterministic costs and class membership")
    bounds.set_defaults(handler=cmd_bounds)

    balance = commands.add_parser("balance", parents=[shared], help="Rebalance a verified tree")
    balance.add_argument("--tree", required=True)
    balance.add_argument("--fn", type=function_arg, required=True)
    balance.add_argument("--mode", choices=("depth", "result"), default="depth")
    balance.add_argument("--out", help="Write the rewritten tree")
    balance.set_defaults(handler=cmd_balance)

    rand = commands.add_parser("rand", help="Randomized equality protocols")
    rand_commands = rand.add_subparsers(dest="action", required=True)
    sim = rand_commands.add_parser("sim", parents=[shared], help="Exact or Monte Carlo error of a protocol")
    sim.add_argument("--proto", choices=("partition", "innerprod", "prime", "poly"), required=True)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--k", type=int, default=2, help="Parts of the partition protocol (default: 2)")
    sim.add_argument("--m", type=int, help="Field size bound of the polynomial protocol (default: 2n)")
    sim.add_argument("--reps", type=int, default=1, help="Points of the polynomial protocol (default: 1)")
    sim.add_argument("--mode", type=mode_arg, default=("exact", None), help="exact or mc:TRIALS (default: exact)")
    sim.add_argument("--twosided", action="store_true", help="Turn the one-sided protocol into a two-sided one")
    sim.add_argument("--amplify", type=fraction_arg, help="Repeat until the error is at most this value")
    sim.add_argument("--pairs", action="store_true", help="Report every pair")
    sim.set_defaults(handler=cmd_rand_sim)
    lower = rand_commands.add_parser("bounds", parents=[shared], help="Randomized lower bounds for EQ")
    lower.add_argument("--n", type=int, required=True)
    lower.add_argument("--eps", type=fraction_arg, default=Fraction(1, 3))
    lower.set_defaults(handler=cmd_rand_bounds)
    derand = rand_commands.add_parser("derandomize", parents=[shared], help="Public strings for the inner-product protocol")
    derand.add_argument("--n", type=int, required=True)
    derand.add_argument("--delta", type=fraction_arg, default=Fraction(1, 4))
    derand.set_defaults(handler=cmd_rand_derandomize)

    dsum = commands.add_parser("dsum", help="Direct-sum experiments")
    dsum_commands = dsum.add_subparsers(dest="action", required=True)
    xk = dsum_commands.add_parser("xk-eq", parents=[shared], help="Parallel equality with track-back")
    xk.add_argument("--k", type=int, required=True)
    xk.add_argument("--n", type=int, required=True)
    xk.add_argument("--wrong", type=int, required=True, help="Unequal pairs per instance")
    xk.add_argument("--seeds", type=seeds_arg, default=range(0, 1), help="S or S0..S1 (default: 0)")
    xk.add_argument("--doubled", action="store_true", help="Two tests per block")
    xk.set_defaults(handler=cmd_dsum_xk)
    nba = dsum_commands.add_parser("nba", parents=[shared], help="NBA protocols")
    nba.add_argument("--n", type=int, required=True)
    nba.add_argument("--k", type=int, default=1)
    nba.add_argument("--mode", choices=NBA_MODES, required=True)
    nba.add_argument("--exhaustive", action="store_true", help="Every edge and team (interactive, tworound)")
    nba.set_defaults(handler=cmd_dsum_nba)
    gbudget = dsum_commands.add_parser("gbudget", parents=[shared], help="Budgets of the counting lemma")
    gbudget.add_argument("--lmax", type=int, required=True)
    gbudget.add_argument("--kmax", type=int, default=32)
    gbudget.add_argument("--rule", choices=("max", "min"), default="max")
    gbudget.add_argument("--allocate", type=int, nargs=3, metavar=("K", "M", "N"), help="Prefix code for one split")
    gbudget.set_defaults(handler=cmd_dsum_gbudget)

    oracle = commands.add_parser("oracle", parents=[shared], help="Protocols with an oracle")
    oracle.add_argument("--fn", type=function_arg, required=True)
    oracle.add_argument("--oracle", choices=tuple(ORACLE_CONSTRUCTIONS) + ("SELF",), required=True)
    oracle.set_defaults(handler=cmd_oracle)

    reduce = commands.add_parser("reduce", parents=[shared], help="Rectangular reductions")
    reduce.add_argument("--from", dest="source", type=function_arg, required=True)
    reduce.add_argument("--to", dest="target", type=function_arg, required=True)
    reduce.add_argument("--via", choices=REDUCTION_MAPS, default="zero-cover", help="Input maps (default: zero-cover)")
    reduce.add_argument("--check", action="store_true", help="Verify the reduction")
    reduce.set_defaults(handler=cmd_reduce)

    space = commands.add_parser("space", parents=[shared], help="Space-bounded protocols")
    space.add_argument("--fn", type=function_arg, required=True)
    space.add_argument("--model", choices=("seq", "block"), default="seq", help="seq: equality protocol; block: memoryless A")
    space.add_argument("--compile", action="store_true", help="Compile into a one-way scheme and compare")
    space.add_argument("--trace", type=int, nargs=2, metavar=("X", "Y"), help="Record the memory contents of one run")
    space.set_defaults(handler=cmd_space)

    reproduce = commands.add_parser("reproduce", parents=[shared], help="Run the acceptance suite")
    reproduce.add_argument("--quick", action="store_true", help="Reduced sizes")
    reproduce.add_argument("--only", type=criteria_arg, help="Comma-separated criterion numbers")
    reproduce.add_argument("--pdf", help="Also write the pass/fail table as a PDF")
    reproduce.set_defaults(handler=cmd_reproduce)
    return parser


def _print_text(payload):
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        print(f"{key}: {value}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.seed is None:
        try:
            args.seed = labconfig.default_seed()
        except ValueError as error:
            parser.error(str(error))
    if args.count_answer_bit is not None:
        labconfig.COUNT_ANSWER_BIT = args.count_answer_bit

    started = time.perf_counter()
    run = None
    try:
        result = args.handler(args)
    except REFUSALS as error:
        print(f"cclab: refused: {error}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as error:
        print(f"cclab: error: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"cclab: {error}", file=sys.stderr)
        return 1
    if len(result) == 3:
        payload, ok, run = result
    else:
        payload, ok = result

    timing = {"seconds": round(time.perf_counter() - started, 3)}
    if run is not None:
        timing["criteria"] = run.timing()
    report = {
        "command": ["cclab"] + list(sys.argv[1:] if argv is None else argv),
        "seed": args.seed,
        "version": labconfig.VERSION,
        "schemaVersion": labconfig.SCHEMA_VERSION,
        "payload": payload,
        "timing": timing,
    }
    if args.format == "text":
        if run is not None:
            print(run.table())
        else:
            _print_text(payload)
    else:
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    if not ok:
        print(f"cclab: {args.command} reported a failed check", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
