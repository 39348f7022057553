# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""
Process-pool executor for trajectory work.

One worker process integrates one trajectory at a time. Dense linear
algebra already threads inside BLAS, so every worker is capped to
``threads_per_worker`` BLAS threads (default 1) to keep N workers from
oversubscribing the cores.

Bypass mode runs items in the calling process. The test suite turns it on
globally with ``QTHERMO_EXECUTOR_BYPASS=1``; it is also required for work
that cannot be pickled, such as closure rate functions.

Definition::

    class LocalExecutor(BaseExecutor):
        def __init__(
            self,
            name: str = "trajectories",
            max_workers: int | None = None,
            threads_per_worker: int = 1,
            max_pending: int = 16,
            bypass: bool = False,
        )
"""

from __future__ import annotations

import asyncio
import logging
import os
import pickle
import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any

from ..utils import cap_blas_threads
from .base import BaseExecutor, ExecutorError

__all__ = ["LocalExecutor", "BYPASS_ENV"]

BYPASS_ENV = "QTHERMO_EXECUTOR_BYPASS"

logger = logging.getLogger("genro_qthermo.executors")


def _init_worker(threads: int) -> None:
    cap_blas_threads(threads)


class LocalExecutor(BaseExecutor):
    """
    Trajectory executor backed by a ProcessPoolExecutor.

    Attributes:
        name: Label used in metrics and logs.
        pool: The process pool, or None in bypass mode.
        max_pending: Items dispatched to the pool at once; further
            submissions wait on a semaphore.

    Example:
        >>> with LocalExecutor(name="halving", max_workers=3) as executor:
        ...     finals = await executor.map(final_system_state, configs)
    """

    __slots__ = ("name", "pool", "max_pending", "_semaphore", "_counts", "_elapsed_ms")

    def __init__(
        self,
        name: str = "trajectories",
        max_workers: int | None = None,
        threads_per_worker: int = 1,
        max_pending: int = 16,
        bypass: bool = False,
    ) -> None:
        self.name = name
        self.max_pending = max_pending
        self._counts = {"submitted": 0, "completed": 0, "failed": 0}
        self._elapsed_ms = 0.0

        if bypass or os.environ.get(BYPASS_ENV) == "1":
            self.pool: ProcessPoolExecutor | None = None
            self._semaphore: asyncio.Semaphore | None = None
        else:
            self.pool = ProcessPoolExecutor(
                max_workers=max_workers,
                initializer=_init_worker,
                initargs=(threads_per_worker,),
            )
            self._semaphore = asyncio.Semaphore(max_pending)
        logger.debug(f"{self.name}: executor ready ({self.mode})")

    @property
    def mode(self) -> str:
        return "bypass" if self.pool is None else "process"

    @property
    def metrics(self) -> dict[str, Any]:
        """Item counters, mode and mean wall time of completed items."""
        done = self._counts["completed"]
        return {
            "name": self.name,
            "mode": self.mode,
            "pending": self._counts["submitted"] - done - self._counts["failed"],
            **self._counts,
            "avg_duration_ms": self._elapsed_ms / done if done else 0.0,
        }

    async def submit(self, func: Callable[..., Any], *args: Any, **kwargs: Any) -> Any:
        """
        Run one item in a worker (in-process when bypassed).

        Raises:
            ExecutorError: If the item cannot be pickled for a worker.
        """
        label = getattr(func, "__name__", repr(func))
        self._counts["submitted"] += 1
        start = time.perf_counter()
        try:
            if self._semaphore is None:
                result = func(*args, **kwargs)
            else:
                async with self._semaphore:
                    result = await self._run_in_pool(label, partial(func, *args, **kwargs))
        except Exception:
            self._counts["failed"] += 1
            raise
        elapsed = (time.perf_counter() - start) * 1000
        self._counts["completed"] += 1
        self._elapsed_ms += elapsed
        logger.debug(f"{self.name}: {label} finished in {elapsed:.1f}ms")
        return result

    async def _run_in_pool(self, label: str, call: Callable[[], Any]) -> Any:
        loop = asyncio.get_running_loop()
        try:
            return await loop.run_in_executor(self.pool, call)
        except (pickle.PicklingError, AttributeError, TypeError) as e:
            # AttributeError/TypeError only count when raised by pickling
            if "pickle" not in str(e).lower():
                raise
            raise ExecutorError(
                f"{label} cannot be sent to a worker process ({e}); "
                f"pass top-level functions or use bypass=True"
            ) from e

    def shutdown(self, wait: bool = True) -> None:
        """Stop the workers; pending items are cancelled when not waiting."""
        if self.pool is not None:
            self.pool.shutdown(wait=wait, cancel_futures=not wait)

    def __repr__(self) -> str:
        return f"LocalExecutor(name={self.name!r}, mode={self.mode})"
