# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Built-in scenarios.

Four qubits with omega = (50, 55, 60, 65), baths at
T = (127.33, 105.57, 95.8, 68.6); Markovian baths use kappa = 1e-3, spin-star
baths nu = 1.0 and alpha = 5e-3. Presets differ in which baths are spin stars:

    fig2a       M  M  M  NM
    fig2b       M  M  NM NM
    fig2c       M  NM NM NM
    all_markov  M  M  M  M
    all_nm      NM NM NM NM
    pair        M  NM          (first two qubits only)

All start from the GHZ state and run t in [0, 50] with dt = 2e-4, sampling
every 50 steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exceptions import ConfigError
from ..model import (
    GHZ,
    BathSpec,
    IntegratorSettings,
    MarkovianBath,
    SimulationConfig,
    SpinStarBath,
    SystemSpec,
)

__all__ = ["PRESETS", "ScenarioPreset", "get_preset"]

OMEGAS = (50.0, 55.0, 60.0, 65.0)
TEMPERATURES = (127.33, 105.57, 95.8, 68.6)
KAPPA = 1e-3
NU = 1.0
ALPHA = 5e-3


@dataclass(frozen=True, slots=True)
class ScenarioPreset:
    """
    A named scenario.

    Attributes:
        name: Preset name used on the command line.
        kinds: "M" or "NM" per qubit.
        description: One-line summary for --help.
    """

    name: str
    kinds: tuple[str, ...]
    description: str = ""

    def resolve(self, n_spins: int = 1) -> SimulationConfig:
        """SimulationConfig with the preset parameters and ``n_spins`` per spin star."""
        k = len(self.kinds)
        baths: list[BathSpec] = []
        for j, kind in enumerate(self.kinds):
            if kind == "M":
                baths.append(MarkovianBath(T=TEMPERATURES[j], kappa=KAPPA))
            else:
                baths.append(SpinStarBath(T=TEMPERATURES[j], nu=NU, alpha=ALPHA, n_spins=n_spins))
        return SimulationConfig(
            system=SystemSpec(OMEGAS[:k]),
            baths=tuple(baths),
            initial_state=GHZ(),
            integrator=IntegratorSettings(dt=2e-4, t_max=50.0, record_stride=50),
            p_weight=0.5,
            eps_log=1e-12,
        )


PRESETS: dict[str, ScenarioPreset] = {
    preset.name: preset
    for preset in (
        ScenarioPreset("fig2a", ("M", "M", "M", "NM"), "three Markovian baths, one spin star"),
        ScenarioPreset("fig2b", ("M", "M", "NM", "NM"), "two Markovian baths, two spin stars"),
        ScenarioPreset("fig2c", ("M", "NM", "NM", "NM"), "one Markovian bath, three spin stars"),
        ScenarioPreset("all_markov", ("M", "M", "M", "M"), "four Markovian baths"),
        ScenarioPreset("all_nm", ("NM", "NM", "NM", "NM"), "four spin stars"),
        ScenarioPreset("pair", ("M", "NM"), "two qubits, one Markovian bath, one spin star"),
    )
}


def get_preset(name: str) -> ScenarioPreset:
    """
    Look up a preset by name.

    Raises:
        ConfigError: If the name is unknown.
    """
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r} (known: {known})", source=name) from None
