#!/usr/bin/env python3
"""
Command-line runner for slant verification scenarios.
Usage examples:
  slant-verify list
  slant-verify run --builtin zero_dim_point --builtin "one_dim_f_recovery(m=3)"
  slant-verify run data/scenarios/torus.cfg --format csv --report out.csv
  slant-verify stability data/scenarios/coinvariants_z.cfg
"""
import argparse
import logging
import sys

from config import settings
from errors import ConfigurationError, SlantError

from .report import render_reports
from .runner import EXIT_ERROR, exit_code, run_many, run_scenario, stability_check
from .scenarios import builtin_names, builtin_scenario, list_scenarios, load_scenarios

logger = logging.getLogger(__name__)


def _add_common(parser):
    parser.add_argument("configs", nargs="*", help="Scenario config files")
    parser.add_argument("--builtin", action="append", default=[], metavar="NAME",
                        help="Builtin scenario, optionally name(k=v,...); repeatable; 'all' runs every builtin")
    parser.add_argument("--seed", type=int, help="Override the seed of every scenario")
    parser.add_argument("--radius", type=int, help="Override the truncation radius R")
    parser.add_argument("--res-radius", type=int, help="Override the resolution radius R_res")
    parser.add_argument("--report", help="Write the report here instead of stdout")
    parser.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    parser.add_argument("--workers", type=int, default=settings.DEFAULT_WORKERS)
    parser.add_argument("--timings", action="store_true", help="Include per-check runtimes")


def build_parser():
    parser = argparse.ArgumentParser(description="Exact verification of equivariant slant products")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level (default from SLANT_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list", help="List builtin scenarios with their anchors")
    _add_common(sub.add_parser("run", help="Run scenarios"))
    _add_common(sub.add_parser("stability", help="Rerun scenarios at R and R+1 and compare"))
    return parser


def collect_scenarios(args):
    scenarios = []
    for path in args.configs:
        scenarios.extend(load_scenarios(path))
    for name in builtin_names(args.builtin):
        scenarios.append(builtin_scenario(name))
    if not scenarios:
        raise ConfigurationError("Nothing to run: give config files or --builtin")
    return [s.with_overrides(seed=args.seed, radius=args.radius, res_radius=args.res_radius) for s in scenarios]


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("Report written to %s", path)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    logger.debug("Settings: %s", settings.summarize())

    if args.cmd == "list":
        for name, description, anchor in list_scenarios():
            sys.stdout.write(f"{name}\t{description}\t{anchor}\n")
        return 0

    try:
        scenarios = collect_scenarios(args)
    except SlantError as exc:
        logger.error("%s", exc)
        return EXIT_ERROR
    logger.info("Running %d scenario(s) with %d worker(s)", len(scenarios), args.workers)
    fn = stability_check if args.cmd == "stability" else run_scenario
    try:
        reports = run_many(scenarios, workers=args.workers, fn=fn)
    except SlantError as exc:
        logger.error("%s", exc)
        return EXIT_ERROR
    try:
        _emit(render_reports(reports, args.format, args.timings), args.report)
    except OSError as exc:
        logger.error("Cannot write report: %s", exc)
        return EXIT_ERROR
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
