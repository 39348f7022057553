# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Sanity observer - density-matrix and modified-Spohn bookkeeping.

Density checks are immediate: a sample with |tr rho - 1| > 1e-9 or a joint
eigenvalue below -1e-8 is a violation. The Spohn margin is checked once the
trajectory is complete, because the tolerance scales with max |sigma| over
the whole run:

    margin >= -tol_spohn * max(1, max_t |sigma|)

Samples flagged ``log_floored`` are excluded from the Spohn check.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

from . import BaseObserver

if TYPE_CHECKING:
    from ...dynamics import JointState
    from ...model import SimulationConfig
    from ...thermo import ThermoRecord
    from . import Sink

logger = logging.getLogger("genro_qthermo.runner")

TRACE_TOL = 1e-9
MIN_EIG_TOL = -1e-8


class SanityObserver(BaseObserver):
    """Collects invariant violations along a trajectory.

    Attributes:
        tol_spohn: Relative Spohn tolerance.
        violations: Human-readable violation messages (final after finish()).
        max_abs_sigma: Running max |sigma|.
    """

    observer_name = "sanity"
    observer_order = 100
    observer_default = True

    __slots__ = ("tol_spohn", "violations", "max_abs_sigma", "_margins", "_finished")

    def __init__(
        self, next: Sink, config: SimulationConfig | None = None, **kwargs: Any
    ) -> None:
        super().__init__(next, **kwargs)
        self.tol_spohn = config.tol_spohn if config is not None else 1e-6
        self.violations: list[str] = []
        self.max_abs_sigma = 0.0
        self._margins: list[tuple[float, float]] = []
        self._finished = False

    def __call__(self, state: JointState, record: ThermoRecord) -> None:
        if record.trace_err > TRACE_TOL:
            self.violations.append(f"t={record.t:.6g}: trace error {record.trace_err:.3e}")
        if record.min_eig < MIN_EIG_TOL:
            self.violations.append(f"t={record.t:.6g}: negative eigenvalue {record.min_eig:.3e}")
        self.max_abs_sigma = max(self.max_abs_sigma, abs(record.epr))
        if not record.log_floored:
            self._margins.append((record.t, record.spohn_margin))
        self.next(state, record)

    @property
    def spohn_threshold(self) -> float:
        return -self.tol_spohn * max(1.0, self.max_abs_sigma)

    def finish(self) -> None:
        if not self._finished:
            self._finished = True
            threshold = self.spohn_threshold
            for t, margin in self._margins:
                if margin < threshold:
                    self.violations.append(
                        f"t={t:.6g}: Spohn margin {margin:.3e} below {threshold:.3e}"
                    )
            for message in self.violations:
                logger.warning(f"violation {message}")
        super().finish()
