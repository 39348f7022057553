# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""
Executor interface for independent trajectory work.

Work items are top-level callables taking a SimulationConfig (see
``runner.verify.final_system_state``); each builds its own generator, so
items share no state and may run in any order.

Definition::

    class BaseExecutor(ABC):
        name: str

        async def submit(self, func, *args, **kwargs) -> Any        # abstract
        def shutdown(self, wait: bool = True) -> None               # abstract
        metrics: dict[str, Any]                                     # abstract property
        async def map(self, func, items, return_exceptions=False) -> list[Any]
        with executor: ...                                          # shutdown on exit
"""

from __future__ import annotations

import asyncio
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable
from typing import Any

from ..exceptions import QThermoError

__all__ = ["BaseExecutor", "ExecutorError"]


class ExecutorError(QThermoError):
    """A work item could not be dispatched (e.g. unpicklable closure)."""


class BaseExecutor(ABC):
    """
    Runs trajectory work and hands back awaitables.

    Attributes:
        name: Label used in metrics and log lines.
    """

    name: str

    @abstractmethod
    async def submit(self, func: Callable[..., Any], *args: Any, **kwargs: Any) -> Any:
        """
        Run ``func(*args, **kwargs)``.

        Raises:
            ExecutorError: If the item cannot be dispatched. Exceptions
                raised by ``func`` itself propagate unchanged.
        """

    @abstractmethod
    def shutdown(self, wait: bool = True) -> None:
        """Release workers."""

    @property
    @abstractmethod
    def metrics(self) -> dict[str, Any]:
        """At least: name, pending, submitted, completed, failed."""

    async def map(
        self,
        func: Callable[[Any], Any],
        items: Iterable[Any],
        return_exceptions: bool = False,
    ) -> list[Any]:
        """Apply ``func`` to every item concurrently; results keep input order."""
        results = await asyncio.gather(
            *(self.submit(func, item) for item in items),
            return_exceptions=return_exceptions,
        )
        return list(results)

    def __enter__(self) -> BaseExecutor:
        return self

    def __exit__(self, *exc: object) -> None:
        self.shutdown()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"
