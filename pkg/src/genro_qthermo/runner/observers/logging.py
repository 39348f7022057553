# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Progress observer - trajectory progress logging.

Log format:
    Sample:  "t=12.5/50 (25.0%) 3120.4ms"
    Finish:  "done t=50/50 5001 samples (12480.2ms)"

Config:
    logger_name (str): Logger name. Default: "genro_qthermo.progress".
    level (str): Log level. Default: "INFO".
    every (int): Log every N samples. Default: 100.

Example:
    Enable in a scenario file::

        observers:
          progress: on
"""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING, Any

from . import BaseObserver

if TYPE_CHECKING:
    from ...dynamics import JointState
    from ...model import SimulationConfig
    from ...thermo import ThermoRecord
    from . import Sink


class ProgressObserver(BaseObserver):
    """Logs trajectory progress with wall-clock timing.

    Class Attributes:
        observer_name: "progress" - identifier for config.
        observer_order: 200 - after sanity bookkeeping.
        observer_default: False - disabled by default.
    """

    observer_name = "progress"
    observer_order = 200
    observer_default = False

    __slots__ = ("logger", "level", "every", "t_max", "_start", "_count", "_last_t")

    def __init__(
        self,
        next: Sink,
        config: SimulationConfig | None = None,
        logger_name: str = "genro_qthermo.progress",
        level: str = "INFO",
        every: int = 100,
        **kwargs: Any,
    ) -> None:
        super().__init__(next, **kwargs)
        self.logger = logging.getLogger(logger_name)
        self.level = getattr(logging, level.upper(), logging.INFO)
        self.every = max(1, int(every))
        self.t_max = config.integrator.t_max if config is not None else 0.0
        self._start = time.perf_counter()
        self._count = 0
        self._last_t = 0.0

    def __call__(self, state: JointState, record: ThermoRecord) -> None:
        if self._count == 0:
            self._start = time.perf_counter()
        if self._count % self.every == 0:
            elapsed = (time.perf_counter() - self._start) * 1000
            share = 100.0 * state.t / self.t_max if self.t_max > 0 else 100.0
            self.logger.log(
                self.level, f"t={state.t:.6g}/{self.t_max:g} ({share:.1f}%) {elapsed:.1f}ms"
            )
        self._count += 1
        self._last_t = state.t
        self.next(state, record)

    def finish(self) -> None:
        elapsed = (time.perf_counter() - self._start) * 1000
        self.logger.log(
            self.level,
            f"done t={self._last_t:.6g}/{self.t_max:g} {self._count} samples ({elapsed:.1f}ms)",
        )
        super().finish()
