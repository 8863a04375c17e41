"""
Scenario runner: generic-point retries, radius stability, parallel runs and
exit codes.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

from config import settings
from errors import ConfigurationError, GenericityExhausted, GenericityViolation, SlantError
from lipschitz_slant import GenericPointStream

from .checks import CHECKS
from .report import Report, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2
EXIT_GENERICITY = 3


def _fingerprint(scenario):
    return {
        "seed": scenario.seed,
        "res_radius": scenario.res_radius,
        "radius": scenario.radius,
        "group": str(scenario.group),
        "ball_cap": settings.ball_cap(),
    }


def run_scenario(scenario, retries=None):
    """Run one scenario, redrawing generic points on degeneracy."""
    scenario.validate()
    retries = settings.GENERICITY_RETRIES if retries is None else retries
    check = CHECKS[scenario.kind]
    stream = GenericPointStream(scenario.seed)
    for attempt in range(retries + 1):
        stream.begin_attempt()
        report = Report(scenario.name, _fingerprint(scenario))
        try:
            check(scenario, stream, report)
        except GenericityViolation as exc:
            logger.warning("Scenario %s attempt %d hit a degenerate point: %s", scenario.name, attempt + 1, exc)
            continue
        report.fingerprint["points"] = stream.rendered()
        report.fingerprint["attempts"] = attempt + 1
        report.apply_expected(scenario.expected)
        logger.info("Scenario %s: %s", scenario.name, "passed" if report.passed else "FAILED")
        return report
    raise GenericityExhausted(f"No generic point for {scenario.name} after {retries + 1} attempts")


def stability_check(scenario, retries=None):
    """
    Run at R and R+1 and record whether each check's value is unchanged. Coinvariant
    scenarios already compute both radii in one run.
    """
    base = run_scenario(scenario, retries)
    if scenario.kind == "coinvariants":
        for entry in list(base.records):
            values = entry.values
            stable = values.get("value") == values.get("next")
            base.record(f"stable[{entry.check}]", stable, value=stable,
                        at_radius=values.get("value"), at_next=values.get("next"))
        return base
    bumped = run_scenario(scenario.with_overrides(radius=scenario.radius + 1), retries)
    for entry in list(base.records):
        other = bumped.get(entry.check)
        if other is None:
            continue
        here, there = render_text(entry.values.get("value")), render_text(other.values.get("value"))
        base.record(f"stable[{entry.check}]", here == there, value=here == there,
                    at_radius=entry.values.get("value"), at_next=other.values.get("value"))
    return base


def _guarded(fn, scenario, retries):
    try:
        return fn(scenario, retries)
    except SlantError as exc:
        logger.error("Scenario %s stopped: %s", scenario.name, exc)
        return Report.failed(scenario.name, exc, _fingerprint(scenario))


def run_many(scenarios, workers=None, fn=run_scenario, retries=None):
    """Run scenarios (in parallel when workers > 1); reports come back sorted by name."""
    names = [s.name for s in scenarios]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ConfigurationError(f"Duplicate scenario names: {', '.join(duplicates)}")
    workers = settings.DEFAULT_WORKERS if workers is None else workers
    if workers <= 1:
        reports = [_guarded(fn, s, retries) for s in scenarios]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            reports = list(executor.map(lambda s: _guarded(fn, s, retries), scenarios))
    return sorted(reports, key=lambda r: r.scenario)


def exit_code(reports):
    if any(r.genericity_exhausted for r in reports):
        return EXIT_GENERICITY
    if any(r.error is not None for r in reports):
        return EXIT_ERROR
    if any(not r.passed for r in reports):
        return EXIT_FAILED
    return EXIT_OK
