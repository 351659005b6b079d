"""Scenario configuration, Monte Carlo runner and result export."""
from .config import ScenarioConfig, load_config, parse_config, serialize_config
from .export import CSV_COLUMNS, export, read_json
from .runner import MetricsRecord, RunResult, TrialFailed, run_scenario, run_trial

__all__ = [
    "CSV_COLUMNS",
    "MetricsRecord",
    "RunResult",
    "ScenarioConfig",
    "TrialFailed",
    "export",
    "load_config",
    "parse_config",
    "read_json",
    "run_scenario",
    "run_trial",
    "serialize_config",
]
