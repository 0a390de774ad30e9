"""Command line: solve, convert, gen, check-equivalence, serve.

Decision commands use SAT-competition exit codes: 10 satisfiable /
feasible, 20 unsatisfiable / infeasible. Non-decision success exits 0;
usage and runtime errors exit 1. All commands are deterministic for
identical flags; TOKENSAT_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .cnf import parse_dimacs, serialize_dimacs
from .equivalence import run_battery
from .game import instance_from_json, instance_to_json
from .generate import GenSpec, planted_sat, random_ksat
from .reduction import decode, encode
from .solvers import Outcome, SearchConfig, brute_force_sat, dpll, local_search

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_OK = 0
EXIT_ERROR = 1


def _default_seed() -> int:
    try:
        return int(os.environ.get("TOKENSAT_SEED", "0"))
    except ValueError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokensat",
        description="CNF satisfiability as a colored-tokens puzzle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide a DIMACS CNF file")
    p_solve.add_argument("path")
    p_solve.add_argument(
        "--engine", choices=("brute", "dpll", "local"), default="dpll"
    )
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--max-flips", type=int, default=100_000)
    p_solve.add_argument("--restarts", type=int, default=10)
    p_solve.add_argument("--noise", type=float, default=0.5)

    p_convert = sub.add_parser(
        "convert", help="convert between DIMACS CNF and game JSON"
    )
    p_convert.add_argument("path")
    p_convert.add_argument(
        "--direction", choices=("cnf2game", "game2cnf"), required=True
    )
    p_convert.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p_gen = sub.add_parser("gen", help="generate a random k-SAT instance")
    p_gen.add_argument("-n", "--num-vars", type=int, required=True)
    p_gen.add_argument("-m", "--num-clauses", type=int, required=True)
    p_gen.add_argument("-k", "--clause-width", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument(
        "--planted", action="store_true", help="plant a hidden model (emitted as a comment)"
    )

    p_check = sub.add_parser(
        "check-equivalence",
        help="verify the two rule sets agree on feasibility",
    )
    p_check.add_argument("--max-colors", type=int, default=3)
    p_check.add_argument("--max-boxes", type=int, default=3)
    p_check.add_argument("--max-tokens", type=int, default=2)
    p_check.add_argument("--samples", type=int, default=500)
    p_check.add_argument("--sample-max-colors", type=int, default=8)
    p_check.add_argument("--seed", type=int, default=None)

    p_serve = sub.add_parser("serve", help="run the game HTTP service")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--instance-dir", default=None)
    p_serve.add_argument("--ui-dir", default=None)

    return parser


def _cmd_solve(args: argparse.Namespace) -> int:
    with open(args.path, encoding="utf-8") as f:
        formula = parse_dimacs(f.read())
    if args.engine == "brute":
        result = brute_force_sat(formula)
    elif args.engine == "dpll":
        result = dpll(formula)
    else:
        config = SearchConfig(
            seed=args.seed if args.seed is not None else _default_seed(),
            max_flips=args.max_flips,
            max_restarts=args.restarts,
            noise=args.noise,
        )
        result = local_search(formula, config)

    print(f"s {result.outcome.value}")
    if result.outcome is Outcome.SATISFIABLE:
        assert result.model is not None
        lits = [v if result.model[v] else -v for v in sorted(result.model)]
        print("v " + " ".join(str(x) for x in lits + [0]))
        return EXIT_SAT
    if result.outcome is Outcome.UNSATISFIABLE:
        return EXIT_UNSAT
    return EXIT_OK


def _cmd_convert(args: argparse.Namespace) -> int:
    with open(args.path, encoding="utf-8") as f:
        text = f.read()
    if args.direction == "cnf2game":
        out = instance_to_json(encode(parse_dimacs(text))) + "\n"
    else:
        out = serialize_dimacs(decode(instance_from_json(text)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        num_vars=args.num_vars,
        num_clauses=args.num_clauses,
        clause_width=args.clause_width,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    if args.planted:
        formula, hidden = planted_sat(spec)
        model = " ".join(str(v if hidden[v] else -v) for v in sorted(hidden))
        sys.stdout.write(f"c planted: {model}\n")
    else:
        formula = random_ksat(spec)
    sys.stdout.write(serialize_dimacs(formula))
    return EXIT_OK


def _cmd_check_equivalence(args: argparse.Namespace) -> int:
    report = run_battery(
        max_colors=args.max_colors,
        max_boxes=args.max_boxes,
        max_tokens_per_box=args.max_tokens,
        samples=args.samples,
        sample_max_colors=args.sample_max_colors,
        seed=args.seed if args.seed is not None else _default_seed(),
    )
    print(f"exhaustive boards checked: {report.exhaustive_checked}")
    print(f"random boards checked:     {report.random_checked}")
    print(f"feasible boards:           {report.feasible}")
    print(f"original-rules oracle:     {report.seconds_original_oracle:.3f}s")
    print(f"variant-rules oracle:      {report.seconds_variant_oracle:.3f}s")
    print(f"discrepancies:             {len(report.discrepancies)}")
    for line in report.discrepancies:
        print(f"  {line}")
    return EXIT_OK if report.ok else EXIT_ERROR


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve  # deferred: keeps solver-only use import-light

    serve(
        host=args.host,
        port=args.port,
        instance_dir=args.instance_dir,
        ui_dir=args.ui_dir,
    )
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "convert": _cmd_convert,
    "gen": _cmd_gen,
    "check-equivalence": _cmd_check_equivalence,
    "serve": _cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; map usage to 1.
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
