# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""
Joint system-plus-spin-baths dynamics.

Exports:
    JointState: Density matrix snapshot at time t.
    GeneratorBundle, assemble_generator: Joint generator.
    nm_dissipator, reduced_terms, system_marginal: Reduced pieces.
    rk4_step, iter_trajectory, evolve: Integration.
"""

from .generator import (
    GeneratorBundle,
    JointState,
    NMInteraction,
    ReducedTerms,
    assemble_generator,
    nm_dissipator,
    reduced_terms,
    system_marginal,
)
from .integrator import DRIFT_WARNING, MAX_TRACE_DRIFT, evolve, iter_trajectory, rk4_step

__all__ = [
    "JointState",
    "NMInteraction",
    "GeneratorBundle",
    "ReducedTerms",
    "assemble_generator",
    "system_marginal",
    "nm_dissipator",
    "reduced_terms",
    "rk4_step",
    "iter_trajectory",
    "evolve",
    "MAX_TRACE_DRIFT",
    "DRIFT_WARNING",
]
