#!/usr/bin/env python3
"""
DegFlag - Main Entry Point

Exhaustive finite-field verification of the identification of degenerate flag
varieties with Schubert varieties, in types A and C, together with the quiver
resolutions of the complete degenerate flag variety.

Exit codes: 0 pass, 1 verification failure, 2 bad arguments, 3 bound exceeded.
"""

import argparse
import json
import sys
from typing import Dict, List, Optional

from src.bounds import BoundExceededError
from src.config import Config
from src.logger import setup_logger
from src.permgroup import iota_perm, is_minimal_rep, length, parse_dimension_vector, sigma_d
from src.quiver_bs import quiver_table
from src.report_store import ReportCache, RunReport
from src.verification import (
    COUNT_TARGETS, SUITES, run_count, run_desing, run_genocchi, run_iso, run_lemma, run_partial,
    run_symplectic, run_torus,
)

logger = setup_logger("DegFlag")

EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_BOUND = 3


def _dims(args) -> Optional[List[int]]:
    if not args.d:
        return None
    return list(parse_dimension_vector(args.n, args.d).d)


def _emit(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def _render(report: RunReport, args) -> str:
    if args.json:
        return report.to_json()
    if args.csv:
        return report.to_csv()
    return report.to_table()


def cmd_sigma(args) -> int:
    dv = parse_dimension_vector(args.n, args.d)
    sigma = sigma_d(dv)
    info = {
        "n": dv.n,
        "d": list(dv.d),
        "sigma": sigma.to_json(),
        "length": length(sigma),
        "minimal_rep": is_minimal_rep(sigma, dv),
        "iota_fixed": iota_perm(sigma, dv.n) == sigma,
    }
    if args.json:
        _emit(json.dumps(info, sort_keys=True, indent=2) + "\n")
    else:
        _emit(f"{sigma}\n")
        _emit(f"length: {info['length']}\n")
        _emit(f"minimal representative: {'yes' if info['minimal_rep'] else 'no'}\n")
        _emit(f"iota-fixed: {'yes' if info['iota_fixed'] else 'no'}\n")
    return EXIT_PASS


def cmd_quiver(args) -> int:
    table = quiver_table(args.n)
    if args.json:
        _emit(json.dumps(table, sort_keys=True, indent=2) + "\n")
        return EXIT_PASS
    lines = [
        "=" * 60,
        f"QUIVER n={table['n']} (N={table['N']})",
        "=" * 60,
        "beta-order:   " + " ".join(table["beta_order"]),
        "columns:      " + " ".join(str(c) for c in table["columns"]),
        "reduced word: " + " ".join(str(c) for c in table["reduced_word"]),
        "",
        "(beta_k : ell) for ell = 1.." + str(2 * args.n - 1),
    ]
    for vertex, row in table["lookup"].items():
        lines.append(f"  {vertex:>8}: " + " ".join(row))
    lines.append("=" * 60)
    _emit("\n".join(lines) + "\n")
    return EXIT_PASS


def _run_cached(command: str, parameters: Dict, runner, args) -> int:
    cache = ReportCache(args.cache_dir)
    if not args.no_cache:
        cached = cache.load(command, parameters)
        if cached is not None:
            report = RunReport.model_validate_json(cached)
            _emit(cached if args.json else _render(report, args))
            return EXIT_PASS if report.passed else EXIT_FAILED

    report = runner()
    if not args.no_cache:
        cache.store(report)
    _emit(_render(report, args))
    return EXIT_PASS if report.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    suite = args.suite
    d = _dims(args) if suite in ("iso", "torus") else None
    if suite == "iso":
        params = {"n": args.n, "p": args.p, "d": d or list(range(1, args.n + 1))}
        runner = lambda: run_iso(args.n, args.p, d, args.threads)
    elif suite == "partial":
        params = {"n": args.n, "p": args.p}
        runner = lambda: run_partial(args.n, args.p, args.threads)
    elif suite == "torus":
        params = {"n": args.n, "p": args.p, "d": d or list(range(1, args.n + 1)),
                  "samples": Config.TORUS_SAMPLES, "seed": Config.TORUS_SEED}
        runner = lambda: run_torus(args.n, args.p, d)
    elif suite == "symplectic":
        n = 2 * args.m - 1
        sd = list(parse_dimension_vector(n, args.d).d)
        params = {"m": args.m, "p": args.p, "d": sd, "signs": Config.SYMPLECTIC_SIGNS}
        runner = lambda: run_symplectic(args.m, args.p, sd, args.threads)
    elif suite == "desing":
        params = {"n": args.n, "p": args.p}
        runner = lambda: run_desing(args.n, args.p)
    elif suite == "lemma":
        params = {"n": args.n}
        runner = lambda: run_lemma(args.n)
    else:
        params = {"max_n": args.max_n}
        runner = lambda: run_genocchi(args.max_n, args.threads)
    return _run_cached(f"verify {suite}", params, runner, args)


def cmd_count(args) -> int:
    d = _dims(args)
    params = {"n": args.n, "d": d or list(range(1, args.n + 1))}
    if args.target in ("degflag", "yn", "rn", "bn"):
        params["p"] = args.p
    runner = lambda: run_count(args.target, args.n, args.p, d, args.threads)
    return _run_cached(f"count {args.target}", params, runner, args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-n', type=int, default=2, help='Rank parameter n (default: 2)')
    common.add_argument('-d', type=str, default=None, help='Dimension vector as a comma list, e.g. 1,3')
    common.add_argument('-p', type=int, default=2, help='Field characteristic (default: 2)')
    output = common.add_mutually_exclusive_group()
    output.add_argument('--json', action='store_true', help='Print the report as JSON')
    output.add_argument('--csv', action='store_true', help='Print the report as CSV')
    common.add_argument('--threads', type=int, default=None,
                        help=f'Worker cap for parallel filtering (default: {Config.THREADS})')
    common.add_argument('--no-cache', action='store_true', help='Bypass the report cache')
    common.add_argument('--cache-dir', type=str, default=None,
                        help=f'Report cache directory (default: {Config.CACHE_DIR})')

    parser = argparse.ArgumentParser(description='Degenerate flag / Schubert verification toolkit')
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('sigma', parents=[common], help='Print sigma_n or sigma_d')

    verify = sub.add_parser('verify', parents=[common], help='Run a verification suite')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('-m', type=int, default=2, help='Symplectic rank m, n = 2m - 1 (default: 2)')
    verify.add_argument('--max-n', type=int, default=4, help='Largest n for the genocchi suite (default: 4)')

    count = sub.add_parser('count', parents=[common], help='Count points or cells')
    count.add_argument('target', choices=COUNT_TARGETS)

    sub.add_parser('quiver', parents=[common], help='Print the beta-order and the (beta:ell) table')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"sigma": cmd_sigma, "verify": cmd_verify, "count": cmd_count, "quiver": cmd_quiver}

    try:
        Config.validate()
        return handlers[args.command](args)
    except BoundExceededError as e:
        logger.error(f"Bound exceeded: {e}")
        return EXIT_BOUND
    except ValueError as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_BAD_ARGS
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAILED
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
