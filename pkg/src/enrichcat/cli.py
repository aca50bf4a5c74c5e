"""Command line: ``enrichcat run <scenario>``, ``enrichcat list``, ``enrichcat recheck <report.json>``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .enriched import DEFAULT_MAX_HOM_DIM
from .report import build_report, recheck_report, to_text, write_reports
from .runner import run_scenario
from .scenario import ScenarioError, bundled, load, resolve


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="enrichcat", description="Run enriched-category scenario checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario file or bundled scenario")
    run.add_argument("scenario", help="path to a .scn file or the name of a bundled scenario")
    run.add_argument("--json", type=Path, default=None, help="path of the JSON report (default: <out>/report.json)")
    run.add_argument("--out", type=Path, default=Path("."), help="directory for report.json and report.txt")
    run.add_argument("--verbose", action="store_true", help="print the full text report")
    run.add_argument("--max-dim", type=int, default=DEFAULT_MAX_HOM_DIM,
                     help="largest hom dimension whose points are enumerated")
    run.add_argument("--seed", type=int, default=None, help="seed for randomized probes (default: the scenario's)")
    sub.add_parser("list", help="list bundled scenarios")
    rc = sub.add_parser("recheck", help="re-verify the certificates stored in a JSON report")
    rc.add_argument("report", type=Path)
    return ap


def _run(args) -> int:
    try:
        sc = load(resolve(args.scenario))
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.max_dim < 0:
        print("error: --max-dim must be non-negative", file=sys.stderr)
        return 2
    seed = sc.seed if args.seed is None else args.seed
    try:
        results = run_scenario(sc, args.max_dim, seed)
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = build_report(sc, results, seed, args.max_dim)
    json_path = args.json or args.out / "report.json"
    txt_path = json_path.with_name("report.txt") if args.json else args.out / "report.txt"
    write_reports(report, json_path, txt_path)
    if args.verbose:
        sys.stdout.write(to_text(report))
    else:
        for c in report["checks"]:
            tag = "PASS" if c["outcome"] == "pass" else "FAIL"
            print(f"[{tag}] line {c['line']}: {c['label']}")
        print(f"RESULT: {'PASS' if report['ok'] else 'FAIL'} ({json_path}, {txt_path})")
    return 0 if report["ok"] else 1


def _recheck(args) -> int:
    try:
        report = json.loads(args.report.read_text())
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    problems = recheck_report(report)
    for p in problems:
        print(p)
    n = len(report.get("certificates", {}))
    print(f"{len(problems)} problems in {n} certificates" if problems else f"{n}/{n} certificates hold")
    return 0 if not problems else 1


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name in bundled():
            print(name)
        return 0
    if args.command == "recheck":
        return _recheck(args)
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
