"""
Scenario reports: one record per check, rendered as JSON lines (one object
per check) or as a CSV summary.

Values are exact: integers stay integers, rationals are rendered "p/q", module
elements use their normal-form string. Runtimes are left out unless asked for,
so two runs with the same seed and radii give byte-identical output.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

from errors import GenericityExhausted
from group_core import GroupElement, TensorElement

logger = logging.getLogger(__name__)


def render_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, TensorElement):
        return value.as_int() if value.order == 0 else str(value)
    if isinstance(value, GroupElement):
        return str(value)
    if isinstance(value, dict):
        return {str(k): render_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render_value(v) for v in value]
    return str(value)


def render_text(value):
    """The string an ``[expected]`` entry is compared with."""
    rendered = render_value(value)
    if isinstance(rendered, str):
        return rendered
    return json.dumps(rendered, ensure_ascii=False)


@dataclass
class CheckRecord:
    check: str
    passed: bool
    values: dict = field(default_factory=dict)
    runtime: float = 0.0


class Report:
    def __init__(self, scenario, fingerprint=None):
        self.scenario = scenario
        self.fingerprint = dict(fingerprint or {})
        self.records = []
        self.error = None
        self.error_type = None
        self._clock = time.perf_counter()

    @classmethod
    def failed(cls, scenario, exc, fingerprint=None):
        report = cls(scenario, fingerprint)
        report.error = str(exc)
        report.error_type = type(exc).__name__
        return report

    def record(self, check, passed, **values):
        """Record the status of one check; runtime is the time since the previous record."""
        now = time.perf_counter()
        entry = CheckRecord(check, bool(passed), values, now - self._clock)
        self._clock = now
        self.records.append(entry)
        if not entry.passed:
            logger.warning("Check %s failed in %s: %s", check, self.scenario, render_value(values))
        return entry

    def get(self, check):
        return next((r for r in self.records if r.check == check), None)

    def apply_expected(self, expected):
        """Compare records with an expected block; missing checks become failures."""
        for check, wanted in expected.items():
            wanted = str(wanted).strip()
            entry = self.get(check)
            if entry is None:
                self.records.append(CheckRecord(check, False, {"expected": wanted, "missing": True}))
                logger.warning("Expected check %s has no record in %s", check, self.scenario)
                continue
            entry.values["expected"] = wanted
            if render_text(entry.values.get("value")) != wanted:
                entry.passed = False
                logger.warning(
                    "Check %s in %s: got %s, expected %s",
                    check, self.scenario, render_text(entry.values.get("value")), wanted,
                )

    @property
    def passed(self):
        return self.error is None and all(r.passed for r in self.records)

    @property
    def genericity_exhausted(self):
        return self.error_type == GenericityExhausted.__name__

    def rows(self, timings=False):
        fingerprint = render_value(self.fingerprint)
        if self.error is not None:
            return [{
                "scenario": self.scenario,
                "check": "error",
                "passed": False,
                "values": {"error": self.error, "type": self.error_type},
                "fingerprint": fingerprint,
            }]
        rows = []
        for entry in self.records:
            row = {
                "scenario": self.scenario,
                "check": entry.check,
                "passed": entry.passed,
                "values": render_value(entry.values),
                "fingerprint": fingerprint,
            }
            if timings:
                row["runtime"] = round(entry.runtime, 6)
            rows.append(row)
        return rows


def to_jsonl(reports, timings=False):
    lines = []
    for report in reports:
        for row in report.rows(timings):
            lines.append(json.dumps(row, sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def to_csv(reports, timings=False):
    records = []
    for report in reports:
        for row in report.rows(timings):
            values = row["values"]
            flat = {
                "scenario": row["scenario"],
                "check": row["check"],
                "passed": row["passed"],
                "value": render_text(values.get("value", values.get("error"))),
                "expected": values.get("expected", ""),
            }
            if timings:
                flat["runtime"] = row.get("runtime", 0.0)
            records.append(flat)
    columns = ["scenario", "check", "passed", "value", "expected"] + (["runtime"] if timings else [])
    return pd.DataFrame(records, columns=columns).to_csv(index=False)


def render_reports(reports, fmt="jsonl", timings=False):
    if fmt == "csv":
        return to_csv(reports, timings)
    return to_jsonl(reports, timings)