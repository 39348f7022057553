# Copyright 2025 Softwell S.r.l.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""genro-qthermo - Thermodynamics of qubits in mixed Markovian / spin-star baths.

Main components:
    SimulationConfig: Validated scenario (system, baths, initial state, integrator)
    GeneratorBundle: Joint generator (Hamiltonian, Lindblad channels, XY couplings)
    evolve / iter_trajectory: Fixed-step RK4 with trace/positivity bookkeeping
    ThermoAnalyzer: Heat currents, entropy production, witness and quantifier
    SimulationRunner: Trajectory to CSV through the observer chain

Numerics:
    qmath: QOperator, partial trace, floored logarithm, entropies
    markov: Eigenoperators, ohmic rates, Lindblad dissipators

Usage:
    from genro_qthermo import parse_config, run

    config = parse_config("fig2a", {"t_max": 5.0})
    status = run(config, "out/fig2a.csv", name="fig2a")

Public names are resolved lazily, so ``import genro_qthermo`` does not load
numpy; the CLI relies on this to cap BLAS threads first.
"""

from __future__ import annotations

import importlib
from typing import Any

__version__ = "0.1.0"

_EXPORTS = {
    # exceptions
    "QThermoError": "exceptions",
    "ConfigError": "exceptions",
    "DimensionError": "exceptions",
    "ContractViolation": "exceptions",
    "DomainError": "exceptions",
    "InstabilityError": "exceptions",
    "NumericalConsistencyError": "exceptions",
    # numerics
    "QOperator": "qmath",
    "kron": "qmath",
    "partial_trace": "qmath",
    "floored_log": "qmath",
    "von_neumann_entropy": "qmath",
    "relative_entropy": "qmath",
    "ohmic_rates": "markov",
    "build_markov_generator": "markov",
    "MarkovDissipator": "markov",
    # model
    "SystemSpec": "model",
    "MarkovianBath": "model",
    "SpinStarBath": "model",
    "GHZ": "model",
    "ProductBasis": "model",
    "Custom": "model",
    "IntegratorSettings": "model",
    "SimulationConfig": "model",
    "JointLayout": "model",
    # dynamics
    "JointState": "dynamics",
    "GeneratorBundle": "dynamics",
    "assemble_generator": "dynamics",
    "evolve": "dynamics",
    "iter_trajectory": "dynamics",
    # thermo
    "ThermoAnalyzer": "thermo",
    "ThermoRecord": "thermo",
    # runner
    "parse_config": "runner",
    "load_scenario": "runner",
    "PRESETS": "runner",
    "SimulationRunner": "runner",
    "run": "runner",
    "verify": "runner",
    "sensitivity": "runner",
}

__all__ = ["__version__", *_EXPORTS]


def __getattr__(name: str) -> Any:
    module = _EXPORTS.get(name)
    if module is None:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
    value = getattr(importlib.import_module(f".{module}", __name__), name)
    globals()[name] = value
    return value


def __dir__() -> list[str]:
    return sorted(__all__)
