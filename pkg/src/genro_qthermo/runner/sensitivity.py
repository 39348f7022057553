# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Sensitivity of the quantifier to the logarithm floor eps_log.

The floor enters only the thermodynamic functionals, never the dynamics, so
one trajectory serves every eps value. For each eps the sweep reports the
peak and final Mbar and the largest pointwise deviation of Mbar(t) from the
curve computed with the finest floor.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..dynamics import assemble_generator, iter_trajectory, reduced_terms
from ..exceptions import ConfigError
from ..model import SimulationConfig
from ..qmath import floored_log
from ..thermo import ReferenceStates, witness_summands

__all__ = ["SensitivityRow", "sensitivity", "format_sensitivity"]

logger = logging.getLogger("genro_qthermo.runner")


@dataclass(frozen=True, slots=True)
class SensitivityRow:
    """Quantifier summary for one floor value."""

    eps_log: float
    peak_mbar: float
    t_peak: float
    final_mbar: float
    max_spread: float


def sensitivity(config: SimulationConfig, eps_values: Sequence[float]) -> list[SensitivityRow]:
    """
    Mbar summaries for several eps_log floors on a single trajectory.

    Raises:
        ConfigError: If eps_values is empty or holds a value outside (0, 1).
    """
    values = sorted({float(e) for e in eps_values})
    if not values:
        raise ConfigError("at least one eps_log value is required", field="eps_logs")
    if any(not 0.0 < e < 1.0 for e in values):
        raise ConfigError(f"eps_log values must lie in (0, 1), got {values}", field="eps_logs")

    generator = assemble_generator(config)
    references = ReferenceStates.build(generator.h_s, config.temperatures)
    nm_logs = [references.logs[i.qubit_index] for i in generator.nm_interactions]

    times: list[float] = []
    curves: list[list[float]] = [[] for _ in values]
    for state in iter_trajectory(config, generator):
        terms = reduced_terms(state, generator)
        times.append(state.t)
        for k, eps in enumerate(values):
            log_rho = floored_log(terms.rho_s, eps)
            summands = witness_summands(terms.rho_s, terms.nm, nm_logs, eps, log_rho)
            curves[k].append(float(sum(abs(x) for x in summands)))

    t = np.asarray(times)
    reference = np.asarray(curves[0])
    rows = []
    for eps, curve in zip(values, curves):
        mbar = np.asarray(curve)
        peak = int(np.argmax(mbar))
        rows.append(
            SensitivityRow(
                eps_log=eps,
                peak_mbar=float(mbar[peak]),
                t_peak=float(t[peak]),
                final_mbar=float(mbar[-1]),
                max_spread=float(np.max(np.abs(mbar - reference))),
            )
        )
        logger.info(f"eps_log={eps:g}: peak Mbar {mbar[peak]:.6g} at t={t[peak]:.6g}")
    return rows


def format_sensitivity(rows: Sequence[SensitivityRow]) -> str:
    """Plain-text table of a sweep."""
    lines = [f"{'eps_log':>10} {'peak_Mbar':>14} {'t_peak':>10} {'final_Mbar':>14} {'max_spread':>12}"]
    for r in rows:
        lines.append(
            f"{r.eps_log:>10.1e} {r.peak_mbar:>14.6e} {r.t_peak:>10.4f} "
            f"{r.final_mbar:>14.6e} {r.max_spread:>12.3e}"
        )
    return "\n".join(lines)
