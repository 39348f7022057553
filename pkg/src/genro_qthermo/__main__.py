# Copyright 2025 Softwell S.r.l.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
genro-qthermo CLI entry point.

Usage:
    genro-qthermo simulate fig2a --out out/fig2a.csv
    genro-qthermo simulate scenario.yaml --out run.csv --t-max 10 --n-spins 2
    genro-qthermo verify fig2a --report verify.json
    genro-qthermo sensitivity fig2a --eps-logs 1e-8,1e-10,1e-12
    genro-qthermo presets

Exit status: 0 ok, 1 configuration error, 2 integrator instability,
3 other numerical error, 4 flagged violations / failed checks.
"""

from __future__ import annotations

import logging
import os
import sys
from typing import TYPE_CHECKING

from .utils import cap_blas_threads

if TYPE_CHECKING:
    from .runner import RunOptions


def _apply_num_threads(argv: list[str]) -> None:
    """Cap BLAS/OpenMP threads; must run before numpy is imported."""
    value = os.environ.get("QTHERMO_NUM_THREADS", "")
    for i, arg in enumerate(argv):
        if arg.startswith(("--num-threads", "--num_threads")):
            _, sep, inline = arg.partition("=")
            if sep:
                value = inline
            elif i + 1 < len(argv):
                value = argv[i + 1]
    if value.strip().isdigit():
        cap_blas_threads(int(value))


def _split_scenario(argv: list[str]) -> tuple[str | None, list[str]]:
    """First positional argument is the scenario; the rest are flags."""
    if argv and not argv[0].startswith("-"):
        return argv[0], argv[1:]
    return None, argv


def _setup(argv: list[str]) -> RunOptions:
    from .exceptions import ConfigError
    from .runner import RunOptions

    scenario, rest = _split_scenario(argv)
    options = RunOptions(scenario=scenario, argv=rest)
    logging.basicConfig(
        level=options.log_level,
        format="%(asctime)s %(levelname)-7s %(name)s: %(message)s",
    )
    if not options.scenario:
        raise ConfigError("missing scenario (preset name or YAML file)")
    return options


def cmd_simulate(argv: list[str]) -> int:
    """Run a scenario to CSV."""
    from .exceptions import ConfigError
    from .runner import SimulationRunner, parse_config

    options = _setup(argv)
    if options.out is None:
        raise ConfigError("--out <csv> is required", field="out")
    config = parse_config(options.scenario, options.config_overrides())
    result = SimulationRunner(config, name=options.scenario).run(options.out)
    print(f"{result.rows} rows -> {result.csv_path}", flush=True)
    print(f"plot script: {result.plot_path}", flush=True)
    for violation in result.violations:
        print(f"violation: {violation}", file=sys.stderr)
    if result.error:
        print(f"Error: {result.error}", file=sys.stderr)
    return result.status


def cmd_verify(argv: list[str]) -> int:
    """Run the verification suite."""
    from .runner import EXIT_OK, EXIT_VIOLATIONS, parse_config, verify

    options = _setup(argv)
    config = parse_config(options.scenario, options.config_overrides())
    report = verify(config, name=options.scenario)
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        print(f"{status:4} {check.name:20} {check.value:.3e} (tol {check.tolerance:.1e}) {check.detail}")
    if options.report is not None:
        report.write(options.report)
        print(f"report: {options.report}", flush=True)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def cmd_sensitivity(argv: list[str]) -> int:
    """Sweep eps_log on one trajectory."""
    from .exceptions import ConfigError
    from .runner import EXIT_OK, format_sensitivity, parse_config, sensitivity

    options = _setup(argv)
    values = options.eps_logs
    if not values:
        raise ConfigError("--eps-logs a,b,c is required", field="eps_logs")
    config = parse_config(options.scenario, options.config_overrides())
    print(format_sensitivity(sensitivity(config, values)))
    return EXIT_OK


def cmd_presets(argv: list[str]) -> int:
    """List the built-in scenarios."""
    from .runner import PRESETS

    for name, preset in PRESETS.items():
        print(f"  {name:10} {' '.join(preset.kinds):14} {preset.description}")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "sensitivity": cmd_sensitivity,
    "presets": cmd_presets,
}


def _print_help() -> None:
    print("Usage: genro-qthermo <command> <preset|scenario.yaml> [options]")
    print()
    print("Commands:")
    print("  simulate          Integrate and write the CSV time series")
    print("  verify            Run the numerical verification suite")
    print("  sensitivity       Sweep the logarithm floor eps_log")
    print("  presets           List built-in scenarios")
    print()
    print("Options:")
    print("  --out FILE        CSV output (simulate)")
    print("  --n-spins N       Spins per spin-star bath (default: 1)")
    print("  --dt X            Time step (default: 2e-4)")
    print("  --t-max X         Final time (default: 50)")
    print("  --stride K        Record every K-th step (default: 50)")
    print("  --p X             Commutator weight of the Markovian group (default: 0.5)")
    print("  --eps-log X       Logarithm floor (default: 1e-12)")
    print("  --eps-logs A,B    Floors to sweep (sensitivity)")
    print("  --observers A,B   Enable observers (sanity, progress)")
    print("  --report FILE     JSON report (verify)")
    print("  --num-threads N   Cap BLAS/OpenMP threads")
    print("  --log-level LVL   Logging level (default: INFO)")
    print("  --version, -v     Show version")
    print("  --help, -h        Show this help")


def main() -> int:
    """Main entry point."""
    if "--version" in sys.argv or "-v" in sys.argv:
        from . import __version__

        print(f"genro-qthermo {__version__}")
        return 0

    if "--help" in sys.argv or "-h" in sys.argv or len(sys.argv) == 1:
        _print_help()
        return 0

    subcommand = sys.argv[1]
    command = COMMANDS.get(subcommand)
    if command is None:
        print(f"Error: unknown subcommand '{subcommand}'", file=sys.stderr)
        return 1

    argv = sys.argv[2:]
    _apply_num_threads(argv)

    from .exceptions import ConfigError, InstabilityError, QThermoError

    try:
        return command(argv)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except InstabilityError as e:
        print(f"Error: {e} (last good t={e.t_last_good:.6g})", file=sys.stderr)
        return 2
    except QThermoError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 3
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
