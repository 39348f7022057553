# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Scenario resolution, simulation runs, verification and eps_log sweeps."""

from .config import RunOptions, apply_overrides, load_scenario, parse_config
from .output import CsvWriter, csv_header, format_row, write_plot_script
from .presets import PRESETS, ScenarioPreset, get_preset
from .runner import (
    EXIT_CONFIG,
    EXIT_INSTABILITY,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VIOLATIONS,
    RunResult,
    SimulationRunner,
    run,
)
from .sensitivity import SensitivityRow, format_sensitivity, sensitivity
from .verify import (
    VERIFY_T_MAX,
    CheckResult,
    VerificationReport,
    VerificationSuite,
    swapped_rates,
    verify,
)

__all__ = [
    "RunOptions",
    "parse_config",
    "load_scenario",
    "apply_overrides",
    "PRESETS",
    "ScenarioPreset",
    "get_preset",
    "CsvWriter",
    "csv_header",
    "format_row",
    "write_plot_script",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_INSTABILITY",
    "EXIT_NUMERICAL",
    "EXIT_VIOLATIONS",
    "RunResult",
    "SimulationRunner",
    "run",
    "SensitivityRow",
    "sensitivity",
    "format_sensitivity",
    "VERIFY_T_MAX",
    "CheckResult",
    "VerificationReport",
    "VerificationSuite",
    "verify",
    "swapped_rates",
]
