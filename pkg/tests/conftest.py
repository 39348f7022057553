# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Shared fixtures: small scenarios that integrate in milliseconds."""

from __future__ import annotations

import pytest

from genro_qthermo.model import (
    IntegratorSettings,
    MarkovianBath,
    ProductBasis,
    SimulationConfig,
    SpinStarBath,
    SystemSpec,
)


@pytest.fixture(autouse=True)
def executor_bypass(monkeypatch: pytest.MonkeyPatch) -> None:
    """Run executor work in-process."""
    monkeypatch.setenv("QTHERMO_EXECUTOR_BYPASS", "1")


@pytest.fixture
def pair_config() -> SimulationConfig:
    """Two qubits: Markovian bath on qubit 1, spin star on qubit 2 (joint dim 8)."""
    return SimulationConfig(
        system=SystemSpec((50.0, 55.0)),
        baths=(
            MarkovianBath(T=127.33, kappa=1e-3),
            SpinStarBath(T=105.57, nu=1.0, alpha=5e-3),
        ),
        integrator=IntegratorSettings(dt=1e-3, t_max=0.05, record_stride=5),
    )


@pytest.fixture
def resonant_config() -> SimulationConfig:
    """Two slow qubits with strong coupling, so every term is visibly nonzero."""
    return SimulationConfig(
        system=SystemSpec((1.0, 1.5)),
        baths=(
            MarkovianBath(T=2.0, kappa=0.2),
            SpinStarBath(T=0.5, nu=1.5, alpha=0.3),
        ),
        integrator=IntegratorSettings(dt=5e-3, t_max=1.0, record_stride=20),
    )


@pytest.fixture
def two_markov_config() -> SimulationConfig:
    """Two qubits, two Markovian baths at different temperatures."""
    return SimulationConfig(
        system=SystemSpec((1.0, 1.5)),
        baths=(MarkovianBath(T=1.0, kappa=0.1), MarkovianBath(T=3.0, kappa=0.1)),
        initial_state=ProductBasis("00"),
        integrator=IntegratorSettings(dt=1e-2, t_max=5.0, record_stride=10),
    )
