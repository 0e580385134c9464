"""Command-line front end: ``python -m src.cli {analyze,generate,verify,search}``.

Exit codes: 0 success, 1 input error, 2 size guard or infeasible parameters,
3 a violation, finding or oracle mismatch.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .bab import GeneratorParams, generate_random_bab
from .config import configure_logging
from .errors import GraphFormatError, InfeasibleParametersError, SizeGuardError, VertexRangeError
from .graph import read_graph, write_graph
from .reporting import analyze_graph, oracle_check
from .search import CONJECTURES, SOURCES, persist_findings, run_search
from .verification import MUTANTS, SUITES, VerifyPlan, run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GUARD = 2
EXIT_VIOLATION = 3


def cmd_analyze(args: argparse.Namespace) -> int:
    G = read_graph(args.path)
    report = analyze_graph(G, max_n=args.max_n)
    mismatches = oracle_check(G, report) if args.oracle else []
    print(report.to_json() if args.json else report.render())
    if mismatches:
        for line in mismatches:
            print(f"oracle mismatch: {line}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    params = GeneratorParams.from_config(args.config or "")
    overrides = {
        "k": args.k,
        "bip_order": args.bip_order,
        "cycle_len": args.cycle_len,
        "depth": args.depth,
        "crossing": args.crossing,
    }
    if args.connected:
        overrides["allow_disconnected"] = False
    merged = {key: value for key, value in overrides.items() if value is not None}
    if merged:
        base = {
            "k": params.k,
            "bip_order": params.bip_order,
            "cycle_len": params.cycle_len,
            "depth": params.depth,
            "crossing": params.crossing,
            "allow_disconnected": params.allow_disconnected,
            "max_attempts": params.max_attempts,
        }
        base.update(merged)
        params = GeneratorParams.from_config(base)

    G, structure = generate_random_bab(args.seed, params)
    out = Path(args.out)
    comments = [
        f"generated BAB instance, seed {args.seed}",
        f"k={params.k} bip_order={params.bip_order[0]}-{params.bip_order[1]} "
        f"cycle_len={params.cycle_len[0]}-{params.cycle_len[1]} depth={params.depth} crossing={params.crossing}",
    ]
    write_graph(out, G, comments)
    sidecar = out.with_name(out.name + ".json")
    sidecar.write_text(structure.to_json() + "\n", encoding="utf-8")
    print(f"wrote {out} (n={G.n}, m={G.m}, k={structure.k}) and {sidecar}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    plan = VerifyPlan(
        exhaustive_n=args.exhaustive_n,
        random=args.random or 0,
        max_n=args.max_n,
        seed=args.seed,
        bab_count=args.bab_count,
        bab_max_n=args.bab_max_n,
        mutant=args.mutant,
        suites=tuple(args.suite) if args.suite else None,
    )
    report = run_verification(plan, workers=args.workers)
    if args.json:
        print(report.to_json())
    else:
        print(report.summary().to_string(index=False))
        for result in report.results:
            for message in result.messages:
                print(f"[{result.name}] {message}")
    if not report.passed:
        print(f"failing suites: {', '.join(report.failing)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    report = run_search(
        trials=args.trials,
        seed=args.seed,
        max_n=args.max_n,
        source=args.source,
        conjecture=args.conjecture,
        workers=args.workers,
    )
    if args.out:
        persist_findings(report, args.out)
    if args.json:
        print(report.to_json())
    else:
        print(f"{len(report.trials)} trials, {len(report.skipped)} skipped, {len(report.findings)} findings")
        for name, value in report.min_slack().items():
            print(f"  min slack [{name}]: {value}")
        if report.source == "bab":
            print(f"  instances strictly below the bound: {len(report.witnesses)}")
    return EXIT_VIOLATION if report.findings else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bab", description="BAB graph calculus toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--log-level", default=None, help="Logging level (default from BAB_LOG_LEVEL).")

    p = sub.add_parser("analyze", help="Report every invariant of a graph file.")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle", action="store_true", help="Cross-check against enumeration oracles.")
    p.add_argument("--max-n", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="Write a random BAB instance and its structure sidecar.")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--bip-order", default=None, help="Bipartite order, N or LO-HI.")
    p.add_argument("--cycle-len", default=None, help="Odd cycle length, N or LO-HI.")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--crossing", type=float, default=None)
    p.add_argument("--connected", action="store_true", help="Redraw until the instance is connected.")
    p.add_argument("--config", default=None, help="key=value generator parameters.")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="Run the property suites.")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive-n", type=int)
    mode.add_argument("--random", type=int)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bab-count", type=int, default=500)
    p.add_argument("--bab-max-n", type=int, default=16)
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--mutant", choices=sorted(MUTANTS), default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="Sample graphs against the corona-ker bound.")
    p.add_argument("--conjecture", choices=CONJECTURES, default="corona-ker-bound")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--source", choices=SOURCES, default="random")
    p.add_argument("--out", default=None, help="Directory for findings and manifest.json.")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.func(args)
    except (GraphFormatError, VertexRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SizeGuardError, InfeasibleParametersError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
