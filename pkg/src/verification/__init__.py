from .report import CheckRecord, Report, render_reports, render_value
from .runner import exit_code, run_many, run_scenario, stability_check
from .scenarios import BUILTINS, Scenario, builtin_scenario, list_scenarios, load_scenarios, parse_scenarios
