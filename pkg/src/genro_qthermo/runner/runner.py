# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Simulation runner - trajectory, records, observers, CSV.

Exit status contract:

    0  success, no flagged violation
    1  configuration error
    2  integrator instability (last good time is logged)
    3  other numerical error
    4  the run completed but violations were flagged
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..dynamics import GeneratorBundle, assemble_generator, iter_trajectory
from ..exceptions import InstabilityError
from ..markov import ohmic_rates
from ..model import SimulationConfig
from ..thermo import ThermoAnalyzer
from ..types import RateFunction
from .observers import find_observer, observer_chain
from .output import CsvWriter, write_plot_script

__all__ = [
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_INSTABILITY",
    "EXIT_NUMERICAL",
    "EXIT_VIOLATIONS",
    "RunResult",
    "SimulationRunner",
    "run",
]

logger = logging.getLogger("genro_qthermo.runner")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INSTABILITY = 2
EXIT_NUMERICAL = 3
EXIT_VIOLATIONS = 4


@dataclass
class RunResult:
    """
    Outcome of one run.

    Attributes:
        status: Exit status (see module docstring).
        rows: Data rows written to the CSV.
        csv_path: CSV file.
        plot_path: Sidecar plot script.
        violations: Flagged invariant violations.
        t_last: Time of the last recorded sample.
        error: Instability message, if the run stopped early.
    """

    status: int
    rows: int
    csv_path: Path
    plot_path: Path
    violations: list[str] = field(default_factory=list)
    t_last: float = 0.0
    error: str = ""


class SimulationRunner:
    """
    Drives one scenario to a CSV file.

    Example:
        >>> runner = SimulationRunner(parse_config("fig2a"), name="fig2a")
        >>> result = runner.run("out/fig2a.csv")
        >>> result.status
        0
    """

    __slots__ = ("config", "name", "generator")

    def __init__(
        self,
        config: SimulationConfig,
        name: str = "",
        generator: GeneratorBundle | None = None,
        rate_fn: RateFunction = ohmic_rates,
    ) -> None:
        self.config = config
        self.name = name
        self.generator = generator if generator is not None else assemble_generator(config, rate_fn=rate_fn)

    def run(self, out: str | Path) -> RunResult:
        """Integrate, record every sample and write the CSV plus plot script."""
        csv_path = Path(out)
        analyzer = ThermoAnalyzer(self.generator, self.config)
        writer = CsvWriter(csv_path, len(self.config.baths))
        plot_path = write_plot_script(csv_path, title=self.name)
        chain = observer_chain(dict(self.config.observers), writer, self.config)

        status = EXIT_OK
        error = ""
        t_last = 0.0
        try:
            for state in iter_trajectory(self.config, self.generator):
                chain(state, analyzer.record(state))
                t_last = state.t
        except InstabilityError as e:
            status = EXIT_INSTABILITY
            error = str(e)
            logger.error(f"integration stopped: {e} (last good t={e.t_last_good:.6g})")
        finally:
            finish = getattr(chain, "finish", None)
            if finish is not None:
                finish()
            writer.close()

        sanity = find_observer(chain, "sanity")
        violations = list(getattr(sanity, "violations", []))
        if status == EXIT_OK and violations:
            status = EXIT_VIOLATIONS
        logger.info(f"wrote {writer.rows} rows to {csv_path} (status {status})")
        return RunResult(status, writer.rows, csv_path, plot_path, violations, t_last, error)

    def __repr__(self) -> str:
        """Return string representation."""
        return f"SimulationRunner(name={self.name!r}, dims={self.generator.layout.dims})"


def run(config: SimulationConfig, out: str | Path, name: str = "") -> int:
    """Run ``config`` to ``out``; returns the exit status."""
    return SimulationRunner(config, name=name).run(out).status
