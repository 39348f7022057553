# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Physical model: configuration types and operator builders."""

from .builders import (
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    JointLayout,
    SpinStarOperators,
    build_spin_star_bath,
    build_system_hamiltonian,
    build_xy_interaction,
    gibbs_state,
    initial_joint_state,
    initial_system_state,
    lift_system_operator,
)
from .specs import (
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

__all__ = [
    "SystemSpec",
    "MarkovianBath",
    "SpinStarBath",
    "BathSpec",
    "GHZ",
    "ProductBasis",
    "Custom",
    "InitialState",
    "IntegratorSettings",
    "SimulationConfig",
    "SIGMA_X",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "JointLayout",
    "SpinStarOperators",
    "build_system_hamiltonian",
    "build_spin_star_bath",
    "build_xy_interaction",
    "gibbs_state",
    "initial_system_state",
    "initial_joint_state",
    "lift_system_operator",
]
