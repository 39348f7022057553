# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""
Dimension-aware dense linear algebra.

Exports:
    QOperator: Dense complex matrix with tensor-factor dims.
    kron, partial_trace, embed, identity: Tensor-product plumbing.
    herm_eig, mat_func_hermitian, floored_log: Spectral tools.
    von_neumann_entropy, relative_entropy, trace_distance: Functionals.
    density_diagnostics, assert_density_matrix: Density-matrix checks.

Example::

    from genro_qthermo.qmath import QOperator, kron, partial_trace

    bell = QOperator(...)            # 4x4, dims (2, 2)
    partial_trace(bell, keep={0})    # I/2
"""

from .entropy import (
    HERM_TOL,
    POSITIVITY_TOL,
    TRACE_TOL,
    assert_density_matrix,
    density_diagnostics,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
)
from .operator import QOperator, embed, identity, kron, partial_trace
from .spectral import DEFAULT_EPS_LOG, HERMITIAN_TOL, floored_log, herm_eig, mat_func_hermitian

__all__ = [
    "QOperator",
    "kron",
    "partial_trace",
    "embed",
    "identity",
    "herm_eig",
    "mat_func_hermitian",
    "floored_log",
    "DEFAULT_EPS_LOG",
    "HERMITIAN_TOL",
    "von_neumann_entropy",
    "relative_entropy",
    "trace_distance",
    "density_diagnostics",
    "assert_density_matrix",
    "TRACE_TOL",
    "HERM_TOL",
    "POSITIVITY_TOL",
]
