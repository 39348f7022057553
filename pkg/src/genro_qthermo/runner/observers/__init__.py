# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Trajectory observers - per-sample hooks chained in front of the CSV sink."""

from __future__ import annotations

import importlib
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterator, Mapping
from pathlib import Path
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from ...dynamics import JointState
    from ...model import SimulationConfig
    from ...thermo import ThermoRecord

Sink = Callable[["JointState", "ThermoRecord"], None]

OBSERVER_REGISTRY: dict[str, type["BaseObserver"]] = {}


class BaseObserver(ABC):
    """Base class for all observers. Subclasses auto-register via __init_subclass__.

    Class attributes:
        observer_name: Registry key (default: class name).
        observer_order: Order in chain (lower = earlier). Ranges:
            100: Invariant bookkeeping (sanity)
            200: Logging/progress
            500-800: Custom
        observer_default: Default on/off state. Default: False.

    An observer receives every recorded (state, record) pair, must not mutate
    them, and passes them on to ``self.next``.
    """

    observer_name: str = ""
    observer_order: int = 500
    observer_default: bool = False

    __slots__ = ("next",)

    def __init__(self, next: Sink, **kwargs: Any) -> None:
        """Initialize observer with the next sink in the chain.

        Args:
            next: The next observer, or the final sink.
            **kwargs: Observer-specific options.
        """
        self.next = next

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        name = cls.observer_name or cls.__name__
        if name in OBSERVER_REGISTRY:
            raise ValueError(f"Observer name '{name}' already registered")
        cls.observer_name = name
        OBSERVER_REGISTRY[name] = cls

    @abstractmethod
    def __call__(self, state: JointState, record: ThermoRecord) -> None: ...

    def finish(self) -> None:
        """Called once after the last sample; forwards to the next link."""
        finish = getattr(self.next, "finish", None)
        if finish is not None:
            finish()


def _autodiscover() -> None:
    """Import all observer modules in this package to trigger registration."""
    package_dir = Path(__file__).parent
    for py_file in package_dir.glob("*.py"):
        if py_file.name.startswith("_"):
            continue
        importlib.import_module(f".{py_file.stem}", __package__)


def observer_chain(
    observer_config: str | list[str] | Mapping[str, Any] | None,
    sink: Sink,
    config: SimulationConfig | None = None,
) -> Sink:
    """Build the observer chain with automatic ordering.

    Uses observer_order for sorting (lower = earlier) and observer_default for
    the default on/off state.

    Args:
        observer_config: Dict {name: on/off}, comma-separated string, or list.
        sink: Innermost callable (usually the CSV writer).
        config: Simulation config, passed to every observer as ``config``.

    Returns:
        The outermost observer (or ``sink`` when nothing is enabled).
    """
    from ...utils import parse_enabled, split_and_strip

    config_dict: dict[str, bool] = {}
    if isinstance(observer_config, str):
        for name in split_and_strip(observer_config):
            config_dict[name] = True
    elif isinstance(observer_config, Mapping):
        for name, value in observer_config.items():
            config_dict[name] = parse_enabled(value)
    elif observer_config:
        for name in observer_config:
            config_dict[name] = True

    unknown = set(config_dict) - set(OBSERVER_REGISTRY)
    if unknown:
        from ...exceptions import ConfigError

        raise ConfigError(
            f"unknown observer(s) {sorted(unknown)} (known: {sorted(OBSERVER_REGISTRY)})",
            field="observers",
        )

    enabled: list[tuple[int, str, type[BaseObserver]]] = []
    for name, cls in OBSERVER_REGISTRY.items():
        is_enabled = config_dict.get(name, cls.observer_default)
        if is_enabled:
            enabled.append((cls.observer_order, name, cls))
    enabled.sort(key=lambda x: x[0])

    chain: Sink = sink
    for _order, _name, cls in reversed(enabled):
        chain = cls(chain, config=config)
    return chain


def iter_chain(chain: Sink) -> Iterator[Sink]:
    """Walk the chain from the outermost link to the sink."""
    link: Sink | None = chain
    while link is not None:
        yield link
        link = getattr(link, "next", None)


def find_observer(chain: Sink, name: str) -> BaseObserver | None:
    """The observer registered as ``name`` in ``chain``, if enabled."""
    for link in iter_chain(chain):
        if isinstance(link, BaseObserver) and link.observer_name == name:
            return link
    return None


_autodiscover()
globals().update(OBSERVER_REGISTRY)

__all__ = [
    "BaseObserver",
    "OBSERVER_REGISTRY",
    "Sink",
    "observer_chain",
    "iter_chain",
    "find_observer",
    *OBSERVER_REGISTRY.keys(),
]
