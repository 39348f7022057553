# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Run options and scenario loading.

Run options (output path, integrator overrides, thread count, log level) are
layered with SmartOptions; later sources override earlier ones:

1. Built-in DEFAULTS
2. The scenario itself (preset or YAML file)
3. Environment variables: QTHERMO_*
4. Command line arguments
5. Explicit constructor parameters

Scenario file format (YAML)::

    system:
      omegas: [50.0, 55.0, 60.0, 65.0]
      initial_state: ghz            # or {bits: "0101"} or {amplitudes: [...]}
    bath:
      1: {kind: markovian, T: 127.33, kappa: 1.0e-3}
      2: {kind: markovian, T: 105.57, kappa: 1.0e-3}
      3: {kind: markovian, T: 95.8, kappa: 1.0e-3}
      4: {kind: spin_star, T: 68.6, nu: 1.0, alpha: 5.0e-3, n_spins: 1}
    integrator:
      dt: 2.0e-4
      t_max: 50.0
      record_stride: 50
    output:
      p_weight: 0.5
      eps_log: 1.0e-12
      tol_spohn: 1.0e-6
    observers:
      progress: on

Every validation error is a ConfigError carrying the file, the dotted field
and the line of the offending key.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import yaml
from genro_toolbox import SmartOptions  # type: ignore[import-untyped]

from ..exceptions import ConfigError
from ..model import (
    GHZ,
    BathSpec,
    Custom,
    InitialState,
    IntegratorSettings,
    MarkovianBath,
    ProductBasis,
    SimulationConfig,
    SpinStarBath,
    SystemSpec,
)
from ..utils import parse_enabled, parse_float_list, split_and_strip
from .presets import PRESETS

__all__ = ["RunOptions", "parse_config", "load_scenario", "apply_overrides"]

DEFAULTS = {"log_level": "INFO", "num_threads": 0}

SECTIONS: dict[str, frozenset[str] | None] = {
    "system": frozenset({"omegas", "initial_state"}),
    "bath": None,
    "integrator": frozenset({"dt", "t_max", "record_stride"}),
    "output": frozenset({"p_weight", "eps_log", "tol_spohn"}),
    "observers": None,
}
BATH_FIELDS = {
    "markovian": frozenset({"kind", "T", "kappa"}),
    "spin_star": frozenset({"kind", "T", "nu", "alpha", "n_spins"}),
}
OVERRIDE_KEYS = frozenset(
    {"n_spins", "dt", "t_max", "record_stride", "p_weight", "eps_log", "tol_spohn", "observers"}
)


def _run_opts_spec(
    scenario: str,
    out: str,
    n_spins: int,
    dt: float,
    t_max: float,
    stride: int,
    p: float,
    eps_log: float,
    eps_logs: str,
    report: str,
    observers: str,
    num_threads: int,
    log_level: str,
) -> None:
    """Reference function for SmartOptions type extraction (no defaults)."""


def _normalize_argv(argv: list[str]) -> list[str]:
    """--t-max -> --t_max, so flags match the reference function parameters."""
    out = []
    for arg in argv:
        if arg.startswith("--"):
            name, sep, value = arg[2:].partition("=")
            arg = f"--{name.replace('-', '_')}{sep}{value}"
        out.append(arg)
    return out


class RunOptions:
    """Layered run options for one CLI invocation."""

    __slots__ = ("_opts",)

    def __init__(
        self,
        scenario: str | None = None,
        out: str | Path | None = None,
        n_spins: int | None = None,
        dt: float | None = None,
        t_max: float | None = None,
        stride: int | None = None,
        p: float | None = None,
        eps_log: float | None = None,
        argv: list[str] | None = None,
    ) -> None:
        env_argv_opts = SmartOptions(_run_opts_spec, env="QTHERMO", argv=_normalize_argv(argv or []))
        caller_opts = SmartOptions(
            dict(
                scenario=scenario,
                out=str(out) if out is not None else None,
                n_spins=n_spins,
                dt=dt,
                t_max=t_max,
                stride=stride,
                p=p,
                eps_log=eps_log,
            ),
            ignore_none=True,
        )
        self._opts = SmartOptions(DEFAULTS) + env_argv_opts + caller_opts

    @property
    def scenario(self) -> str | None:
        return self._opts["scenario"]

    @property
    def out(self) -> Path | None:
        out = self._opts["out"]
        return Path(out) if out else None

    @property
    def report(self) -> Path | None:
        report = self._opts["report"]
        return Path(report) if report else None

    @property
    def eps_logs(self) -> list[float]:
        """eps_log values of a sensitivity sweep."""
        return parse_float_list(self._opts["eps_logs"])

    @property
    def num_threads(self) -> int:
        return int(self._opts["num_threads"] or 0)

    @property
    def log_level(self) -> str:
        return str(self._opts["log_level"] or "INFO").upper()

    def config_overrides(self) -> dict[str, Any]:
        """Overrides for :func:`parse_config`, None entries dropped."""
        overrides = {
            "n_spins": self._opts["n_spins"],
            "dt": self._opts["dt"],
            "t_max": self._opts["t_max"],
            "record_stride": self._opts["stride"],
            "p_weight": self._opts["p"],
            "eps_log": self._opts["eps_log"],
        }
        observers = self._opts["observers"]
        if observers:
            overrides["observers"] = {name: True for name in split_and_strip(observers)}
        return {k: v for k, v in overrides.items() if v is not None}

    def __getitem__(self, name: str) -> Any:
        """Proxy bracket access to underlying opts."""
        return self._opts[name]


def parse_config(source: str | Path, overrides: Mapping[str, Any] | None = None) -> SimulationConfig:
    """
    Resolve a preset name or scenario file into a validated SimulationConfig.

    Args:
        source: Preset name (see PRESETS) or path to a YAML scenario.
        overrides: Values replacing the scenario's (n_spins, dt, t_max,
            record_stride, p_weight, eps_log, tol_spohn, observers).

    Raises:
        ConfigError: Unknown preset/missing file, unknown key, bath-count
            mismatch, invalid value.
    """
    name = str(source)
    if name in PRESETS:
        config = PRESETS[name].resolve()
    else:
        path = Path(name)
        if not path.is_file():
            known = ", ".join(sorted(PRESETS))
            raise ConfigError(
                f"not a preset ({known}) nor a readable scenario file", source=name
            )
        config = load_scenario(path)
    return apply_overrides(config, overrides or {}, source=name)


def apply_overrides(
    config: SimulationConfig, overrides: Mapping[str, Any], source: str = ""
) -> SimulationConfig:
    """Return ``config`` with run-option overrides applied."""
    unknown = set(overrides) - OVERRIDE_KEYS
    if unknown:
        raise ConfigError(f"unknown override(s) {sorted(unknown)}", source=source)
    values = {k: v for k, v in overrides.items() if v is not None}
    if not values:
        return config
    try:
        baths = config.baths
        if "n_spins" in values:
            baths = tuple(
                dataclasses.replace(b, n_spins=int(values["n_spins"]))
                if isinstance(b, SpinStarBath)
                else b
                for b in baths
            )
        integrator = dataclasses.replace(
            config.integrator,
            **{
                k: (int(values[k]) if k == "record_stride" else float(values[k]))
                for k in ("dt", "t_max", "record_stride")
                if k in values
            },
        )
        observers = config.observers
        if "observers" in values:
            merged = dict(observers)
            merged.update({k: parse_enabled(v) for k, v in dict(values["observers"]).items()})
            observers = tuple(merged.items())
        return dataclasses.replace(
            config,
            baths=baths,
            integrator=integrator,
            observers=observers,
            **{k: float(values[k]) for k in ("p_weight", "eps_log", "tol_spohn") if k in values},
        )
    except ConfigError as e:
        raise ConfigError(e.message, field=e.field, source=source) from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid override: {e}", source=source) from e


# =============================================================================
# YAML scenarios
# =============================================================================


def _key_lines(node: yaml.Node, path: tuple[str, ...] = ()) -> dict[tuple[str, ...], int]:
    """Map each key path to the 1-based line of its key."""
    lines: dict[tuple[str, ...], int] = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = (*path, str(key_node.value))
            lines[key] = key_node.start_mark.line + 1
            lines.update(_key_lines(value_node, key))
    return lines


class _ScenarioReader:
    """Builds a SimulationConfig from parsed YAML, tracking source lines."""

    __slots__ = ("source", "lines")

    def __init__(self, source: str, lines: dict[tuple[str, ...], int]) -> None:
        self.source = source
        self.lines = lines

    def error(self, message: str, *path: str) -> ConfigError:
        line = None
        for depth in range(len(path), 0, -1):
            line = self.lines.get(path[:depth])
            if line is not None:
                break
        return ConfigError(message, field=".".join(path), source=self.source, line=line)

    @contextmanager
    def located(self, *path: str) -> Iterator[None]:
        """Re-raise ConfigError from value constructors with file location."""
        try:
            yield
        except ConfigError as e:
            if e.source:
                raise
            full = (*path, e.field) if e.field else path
            raise self.error(e.message, *full) from e

    def number(self, value: Any, *path: str) -> float:
        # YAML 1.1 reads 1e-3 (no dot) as a string
        if isinstance(value, bool):
            raise self.error(f"expected a number, got {value!r}", *path)
        try:
            return float(value)
        except (TypeError, ValueError):
            raise self.error(f"expected a number, got {value!r}", *path) from None

    def integer(self, value: Any, *path: str) -> int:
        number = self.number(value, *path)
        if number != int(number):
            raise self.error(f"expected an integer, got {value!r}", *path)
        return int(number)

    def mapping(self, value: Any, *path: str) -> dict[str, Any]:
        if value is None:
            return {}
        if not isinstance(value, dict):
            raise self.error(f"expected a mapping, got {type(value).__name__}", *path)
        return {str(k): v for k, v in value.items()}

    def check_keys(self, data: Mapping[str, Any], allowed: frozenset[str], *path: str) -> None:
        for key in data:
            if key not in allowed:
                raise self.error(
                    f"unknown key {key!r} (expected one of {sorted(allowed)})", *path, key
                )

    def initial_state(self, value: Any) -> InitialState:
        path = ("system", "initial_state")
        if value is None or (isinstance(value, str) and value.lower() == "ghz"):
            return GHZ()
        data = self.mapping(value, *path)
        if set(data) == {"bits"}:
            bits = data["bits"]
            if not isinstance(bits, str):
                raise self.error("bits must be a quoted string such as \"0101\"", *path, "bits")
            with self.located(*path):
                return ProductBasis(bits)
        if set(data) == {"amplitudes"}:
            raw = data["amplitudes"]
            if not isinstance(raw, list):
                raise self.error("amplitudes must be a list", *path, "amplitudes")
            amplitudes = []
            for i, amp in enumerate(raw):
                if isinstance(amp, list) and len(amp) == 2:
                    re_part = self.number(amp[0], *path, "amplitudes")
                    im_part = self.number(amp[1], *path, "amplitudes")
                    amplitudes.append(complex(re_part, im_part))
                else:
                    amplitudes.append(complex(self.number(amp, *path, "amplitudes")))
            return Custom(tuple(amplitudes))
        raise self.error("expected 'ghz', {bits: ...} or {amplitudes: [...]}", *path)

    def bath(self, key: str, value: Any) -> BathSpec:
        path = ("bath", key)
        data = self.mapping(value, *path)
        kind = str(data.get("kind", "")).lower()
        if kind not in BATH_FIELDS:
            raise self.error(f"kind must be one of {sorted(BATH_FIELDS)}", *path, "kind")
        self.check_keys(data, BATH_FIELDS[kind], *path)
        for required in BATH_FIELDS[kind] - {"kind", "n_spins"}:
            if required not in data:
                raise self.error(f"missing {required!r}", *path)
        with self.located(*path):
            if kind == "markovian":
                return MarkovianBath(
                    T=self.number(data["T"], *path, "T"),
                    kappa=self.number(data["kappa"], *path, "kappa"),
                )
            return SpinStarBath(
                T=self.number(data["T"], *path, "T"),
                nu=self.number(data["nu"], *path, "nu"),
                alpha=self.number(data["alpha"], *path, "alpha"),
                n_spins=self.integer(data.get("n_spins", 1), *path, "n_spins"),
            )

    def build(self, raw: Any) -> SimulationConfig:
        top = self.mapping(raw)
        for section in top:
            if section not in SECTIONS:
                raise self.error(f"unknown section {section!r} (expected {sorted(SECTIONS)})", section)
        parsed = {name: self.mapping(top.get(name), name) for name in SECTIONS}
        for name, allowed in SECTIONS.items():
            if allowed is not None:
                self.check_keys(parsed[name], allowed, name)

        system = parsed["system"]
        if "omegas" not in system:
            raise self.error("missing 'omegas'", "system")
        omegas = system["omegas"]
        if not isinstance(omegas, list):
            raise self.error("omegas must be a list", "system", "omegas")
        with self.located("system"):
            spec = SystemSpec(tuple(self.number(w, "system", "omegas") for w in omegas))

        bath_section = parsed["bath"]
        expected = [str(j) for j in range(1, spec.n_qubits + 1)]
        for key in bath_section:
            if key not in expected:
                raise self.error(
                    f"bath {key!r} does not name a qubit 1..{spec.n_qubits}", "bath", key
                )
        if len(bath_section) != spec.n_qubits:
            missing = [k for k in expected if k not in bath_section]
            raise self.error(
                f"{len(bath_section)} baths given for {spec.n_qubits} qubits (missing {missing})",
                "bath",
            )
        baths = tuple(self.bath(key, bath_section[key]) for key in expected)

        integrator_data = parsed["integrator"]
        with self.located("integrator"):
            integrator = IntegratorSettings(
                **{
                    k: (
                        self.integer(v, "integrator", k)
                        if k == "record_stride"
                        else self.number(v, "integrator", k)
                    )
                    for k, v in integrator_data.items()
                }
            )

        output = parsed["output"]
        observers = tuple((name, parse_enabled(v)) for name, v in parsed["observers"].items())
        initial_state = self.initial_state(system.get("initial_state"))
        values = {k: self.number(v, "output", k) for k, v in output.items()}
        try:
            return SimulationConfig(
                system=spec,
                baths=baths,
                initial_state=initial_state,
                integrator=integrator,
                observers=observers,
                **values,
            )
        except ConfigError as e:
            section = "output" if e.field in SECTIONS["output"] else "system"  # type: ignore[operator]
            raise self.error(e.message, section, e.field) from e


def load_scenario(path: str | Path) -> SimulationConfig:
    """
    Parse a YAML scenario file.

    Raises:
        ConfigError: On YAML syntax errors and every validation failure, with
            the line of the offending key.
    """
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read scenario: {e}", source=source) from e
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ConfigError(f"invalid YAML: {e}", source=source, line=line) from e
    lines = _key_lines(node) if node is not None else {}
    return _ScenarioReader(source, lines).build(raw)
