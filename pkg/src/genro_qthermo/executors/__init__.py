# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""
Executors for running independent trajectories in parallel.

A single trajectory is inherently serial; independent ones (step-halving
runs, parameter sweeps) share nothing and can run in worker processes.

Usage::

    from genro_qthermo.executors import LocalExecutor

    executor = LocalExecutor(name="verify", max_workers=3)
    final = await executor.submit(final_system_state, config)
"""

from .base import BaseExecutor, ExecutorError
from .local import LocalExecutor

__all__ = ["BaseExecutor", "ExecutorError", "LocalExecutor"]
