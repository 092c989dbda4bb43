"""The `quiztree` command line.

Subcommands: huffman (optimal tree of a distribution), strategy (build or
estimate one strategy and report cost/redundancy/prolixity), bench (sampled
comparison tables), verify (named invariant suites), play (terminal REPL),
serve (HTTP session service).

Distributions come from JSON files: {"weights": ["1/2", "1/4", "1/4"]} or
{"dyadic_exponents": [1, 2, 2]}.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .bench import BenchConfig, bench_run, emit_csv, write_reports
from .core import Distribution, entropy, tree_cost
from .errors import InconsistentAnswers, IOFailure, QuiztreeError
from .huffman import huffman
from .session import make_stepper
from .strategy_at import DEFAULT_THRESHOLD, comparison_equality_family
from .strategy_cone import cone_family
from .strategy_prolixity import prolixity_family_size_bound
from .strategy_vector import vector_family_size
from .verify import available_suites, run_suite

__all__ = ["main"]


def _load_dist(path: str) -> Distribution:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IOFailure(f"{path} is not valid JSON: {exc}") from exc
    return Distribution.from_json(obj)


def _strategy_args(args: argparse.Namespace) -> dict:
    strategy: dict = {"kind": args.kind}
    if args.kind == "at" and args.t is not None:
        strategy["t"] = args.t
    if args.kind == "vector":
        strategy["r"] = args.r
    if args.kind == "prolixity":
        strategy["k"] = args.k
        strategy["seed"] = args.seed
    return strategy


def _family_size(kind: str, n: int, args: argparse.Namespace) -> Optional[int]:
    if n < 2:
        return 0
    if kind == "at":
        return len(comparison_equality_family(n))
    if kind == "vector":
        return vector_family_size(n, args.r)
    if kind == "cone":
        return len(cone_family(n))
    if kind == "prolixity" and n > 2**args.k:
        return prolixity_family_size_bound(n, args.k)
    return None


def cmd_huffman(args: argparse.Namespace) -> int:
    dist = _load_dist(args.dist)
    result = huffman(dist)
    print(f"n = {dist.n}")
    print(f"entropy = {entropy(dist)!r} bits")
    print(f"opt_cost = {result.opt_cost} ({float(result.opt_cost)!r})")
    print(json.dumps({"n": dist.n, "tree": result.tree.to_json()}))
    return 0


def cmd_strategy(args: argparse.Namespace) -> int:
    dist = _load_dist(args.dist)
    h = entropy(dist)
    result = huffman(dist)
    opt = result.opt_cost
    print(f"n = {dist.n}")
    print(f"entropy = {h!r} bits")
    print(f"opt = {opt} ({float(opt)!r})")
    if args.kind == "prolixity":
        from .strategy_prolixity import ProlixityParams, estimate_expected_cost

        params = ProlixityParams(k=args.k, rng_seed=args.seed)
        estimate = estimate_expected_cost(dist, params, args.trials)
        print(f"strategy = prolixity(k={args.k}), {args.trials} trials, seed {args.seed}")
        print(f"mean cost = {estimate.mean!r} ± {estimate.stderr!r}")
        print(f"bound = Opt + r + r^2 = {estimate.bound!r}")
        print(f"prolixity = {estimate.mean - float(opt)!r}")
    else:
        from .strategy_at import AtParams, build_at_tree
        from .strategy_cone import cone_optimal_tree
        from .strategy_vector import build_vector_tree

        if args.kind == "at":
            t = Fraction(args.t) if args.t else DEFAULT_THRESHOLD
            label, built = f"at(t={t})", build_at_tree(dist, AtParams(t))
        elif args.kind == "vector":
            label, built = f"vector(r={args.r})", build_vector_tree(dist, args.r)
        elif args.kind == "cone":
            label, built = "cone", cone_optimal_tree(dist)
        else:
            label, built = "huffman", result.tree
        cost = tree_cost(built, dist)
        print(f"strategy = {label}")
        print(f"cost = {cost} ({float(cost)!r})")
        print(f"redundancy = {float(cost) - h!r}")
        print(f"prolixity = {cost - opt} ({float(cost - opt)!r})")
        if args.emit_tree:
            print(json.dumps(built.to_json()))
    size = _family_size(args.kind, dist.n, args)
    if size is not None:
        print(f"family size = {size}")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        ns = tuple(int(part) for part in args.ns.split(",") if part)
    except ValueError:
        print(f"error: --ns must be a comma list of integers, got {args.ns!r}", file=sys.stderr)
        return 2
    config = BenchConfig(
        strategy=args.kind,
        ns=ns,
        family=args.family,
        samples=args.samples,
        seed=args.seed,
        t=Fraction(args.t) if args.t else DEFAULT_THRESHOLD,
        r=args.r,
        k=args.k,
        trials=args.trials,
    )
    rows = bench_run(config)
    sys.stdout.write(emit_csv(rows))
    if args.out:
        csv_path, json_path = write_reports(rows, Path(args.out))
        print(f"wrote {csv_path} and {json_path}", file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = available_suites() if args.suite == "all" else (args.suite,)
    results = [run_suite(name) for name in names]
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2))
    else:
        for result in results:
            print(result.human())
    return 0 if all(r.ok for r in results) else 1


def cmd_play(args: argparse.Namespace) -> int:
    dist = _load_dist(args.dist)
    label, stepper = make_stepper(dist, _strategy_args(args))
    opt = huffman(dist).opt_cost
    print(f"playing {label} on x_1..x_{dist.n}")
    print(f"gauges: H = {entropy(dist):.4f} bits, Opt = {opt} ({float(opt):.4f})")
    print("think of an element; answer each question with y or n (q quits)")
    while not stepper.done:
        question = stepper.question()
        try:
            reply = input(f"{question.render()} [y/n] ").strip().lower()
        except EOFError:
            print()
            return 1
        if reply in {"q", "quit"}:
            return 1
        if reply not in {"y", "yes", "n", "no"}:
            print("please answer y or n")
            continue
        try:
            stepper.answer(reply in {"y", "yes"})
        except InconsistentAnswers as exc:
            print(f"that cannot be: {exc}; answer again")
    print(f"your element is x_{stepper.result}, found in {stepper.asked} questions")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(allow_origin=args.allow_origin),
        host=args.host,
        port=args.port,
        log_level="info",
    )
    return 0


def _add_strategy_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--kind",
        required=True,
        choices=("at", "vector", "cone", "prolixity", "huffman"),
        help="which strategy to run",
    )
    parser.add_argument("--t", default=None, help="threshold for --kind at, e.g. 3/10")
    parser.add_argument("--r", type=int, default=2, help="redundancy budget for --kind vector")
    parser.add_argument("--k", type=int, default=3, help="heaviness exponent for --kind prolixity")
    parser.add_argument("--seed", type=int, default=0, help="rng seed for --kind prolixity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiztree",
        description="Decision-tree identification strategies over ordered domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("huffman", help="optimal tree and cost of a distribution")
    p.add_argument("--dist", required=True, help="distribution JSON file")
    p.set_defaults(fn=cmd_huffman)

    p = sub.add_parser("strategy", help="build one strategy and report its cost")
    p.add_argument("--dist", required=True, help="distribution JSON file")
    _add_strategy_options(p)
    p.add_argument("--trials", type=int, default=10000, help="samples for --kind prolixity")
    p.add_argument("--emit-tree", action="store_true", help="also print the tree JSON")
    p.set_defaults(fn=cmd_strategy)

    p = sub.add_parser("bench", help="measure strategies over sampled distributions")
    _add_strategy_options(p)
    p.add_argument("--ns", default="8,32,128", help="comma list of domain sizes")
    p.add_argument(
        "--family",
        default="uniform-simplex",
        help="uniform-simplex | zipf | zipf(s) | dyadic-random | file:PATH",
    )
    p.add_argument("--samples", type=int, default=100, help="distributions per n")
    p.add_argument("--trials", type=int, default=200, help="games per distribution (prolixity)")
    p.add_argument("--out", default=None, help="write CSV and JSON reports here")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument(
        "--suite",
        default="all",
        choices=available_suites() + ("all",),
        help="which suite to run",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("play", help="interactive game in the terminal")
    p.add_argument("--dist", required=True, help="distribution JSON file")
    _add_strategy_options(p)
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("serve", help="HTTP session service for the browser UI")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--allow-origin",
        default=None,
        help="comma list of CORS origins for a UI served elsewhere",
    )
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except QuiztreeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
