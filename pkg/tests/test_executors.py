# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Tests for the executors package."""

from __future__ import annotations

import asyncio
import math
import os
from typing import Any

import numpy as np
import pytest

from genro_qthermo.exceptions import QThermoError
from genro_qthermo.executors import BaseExecutor, ExecutorError, LocalExecutor
from genro_qthermo.executors.local import BYPASS_ENV, _init_worker
from genro_qthermo.model import SimulationConfig
from genro_qthermo.runner.verify import final_system_state
from genro_qthermo.utils import THREAD_VARS


# =============================================================================
# BaseExecutor Tests
# =============================================================================


class TestBaseExecutor:
    """Tests for BaseExecutor ABC."""

    def test_cannot_instantiate_directly(self) -> None:
        """BaseExecutor is abstract and cannot be instantiated."""
        with pytest.raises(TypeError, match="abstract"):
            BaseExecutor()  # type: ignore[abstract]

    def test_subclass_must_implement_abstract_methods(self) -> None:
        """Subclasses must implement all abstract methods."""

        class IncompleteExecutor(BaseExecutor):
            name = "incomplete"

        with pytest.raises(TypeError, match="abstract"):
            IncompleteExecutor()  # type: ignore[abstract]

    async def test_map_uses_submit(self) -> None:
        """map goes through submit once per item, in input order."""

        class RecordingExecutor(BaseExecutor):
            name = "recording"
            submitted: list[str] = []

            async def submit(self, func: Any, *args: Any, **kwargs: Any) -> Any:
                self.submitted.append(func.__name__)
                return func(*args, **kwargs)

            def shutdown(self, wait: bool = True) -> None:
                pass

            @property
            def metrics(self) -> dict[str, Any]:
                return {"name": self.name}

        def square(x: int) -> int:
            return x * x

        executor = RecordingExecutor()
        assert await executor.map(square, [1, 2, 3]) == [1, 4, 9]
        assert executor.submitted == ["square"] * 3
        assert repr(executor) == "RecordingExecutor(name='recording')"


# =============================================================================
# LocalExecutor Tests
# =============================================================================


class TestLocalExecutor:
    """Tests for LocalExecutor."""

    def test_bypass_mode_no_pool(self) -> None:
        """In bypass mode, no ProcessPool is created."""
        executor = LocalExecutor(name="verify", bypass=True)
        assert executor.pool is None
        assert executor._semaphore is None
        assert repr(executor) == "LocalExecutor(name='verify', mode=bypass)"

    def test_env_bypass(self) -> None:
        """QTHERMO_EXECUTOR_BYPASS=1 (set for every test) enables bypass mode."""
        executor = LocalExecutor(name="verify")
        assert executor.pool is None
        assert executor.metrics["mode"] == "bypass"

    def test_process_mode(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Without bypass a process pool is created (workers start lazily)."""
        monkeypatch.delenv(BYPASS_ENV)
        executor = LocalExecutor(name="pool", max_workers=1)
        try:
            assert executor.pool is not None
            assert executor.metrics["mode"] == "process"
            assert "mode=process" in repr(executor)
        finally:
            executor.shutdown()

    async def test_submit_directly(self) -> None:
        executor = LocalExecutor(bypass=True)
        assert await executor.submit(divmod, 17, 5) == (3, 2)

    async def test_metrics(self) -> None:
        """Counters track completed and failed work, in bypass mode too."""
        executor = LocalExecutor(name="verify", bypass=True)
        assert executor.metrics == {
            "name": "verify",
            "mode": "bypass",
            "pending": 0,
            "submitted": 0,
            "completed": 0,
            "failed": 0,
            "avg_duration_ms": 0.0,
        }
        await executor.submit(sum, [1, 2, 3])
        with pytest.raises(ZeroDivisionError):
            await executor.submit(divmod, 1, 0)
        metrics = executor.metrics
        assert metrics["submitted"] == 2
        assert metrics["completed"] == 1
        assert metrics["failed"] == 1
        assert metrics["pending"] == 0
        assert metrics["avg_duration_ms"] >= 0.0

    async def test_exception_propagation(self) -> None:
        """Exceptions from executed functions propagate unchanged."""
        executor = LocalExecutor(bypass=True)

        @executor
        def failing() -> None:
            raise QThermoError("intentional error")

        with pytest.raises(QThermoError, match="intentional error"):
            await failing()

    def test_shutdown_bypass_mode(self) -> None:
        LocalExecutor(bypass=True).shutdown()

    def test_context_manager_shuts_down(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv(BYPASS_ENV)
        with LocalExecutor(name="pool", max_workers=1) as executor:
            pool = executor.pool
        assert pool is not None
        with pytest.raises(RuntimeError):
            pool.submit(sum, [1])

    async def test_map_keeps_order(self) -> None:
        executor = LocalExecutor(bypass=True)
        assert await executor.map(abs, [-3, 2, -1]) == [3, 2, 1]

    async def test_map_return_exceptions(self) -> None:
        executor = LocalExecutor(bypass=True)
        results = await executor.map(math.sqrt, [4.0, -1.0], return_exceptions=True)
        assert results[0] == 2.0
        assert isinstance(results[1], ValueError)
        assert executor.metrics["failed"] == 1

    def test_worker_thread_cap(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """The pool initializer caps BLAS threads in each worker."""
        for var in THREAD_VARS:
            monkeypatch.setenv(var, "8")
        _init_worker(1)
        assert all(os.environ[var] == "1" for var in THREAD_VARS)


# =============================================================================
# Trajectory work
# =============================================================================


class TestTrajectoryWork:
    """Executors running independent trajectories."""

    async def test_concurrent_trajectories(self, pair_config: SimulationConfig) -> None:
        """Independent runs through gather match direct calls."""
        executor = LocalExecutor(name="sweep", max_workers=2)
        try:
            finals = await asyncio.gather(
                executor.submit(final_system_state, pair_config),
                executor.submit(final_system_state, pair_config),
            )
        finally:
            executor.shutdown()
        expected = final_system_state(pair_config)
        for final in finals:
            assert np.array_equal(final, expected)
        assert executor.metrics["completed"] == 2


class TestExecutorError:
    def test_is_qthermo_error(self) -> None:
        assert issubclass(ExecutorError, QThermoError)
        with pytest.raises(ExecutorError, match="cannot serialize"):
            raise ExecutorError("cannot serialize closure")
