# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Entropy functionals and density-matrix sanity checks (units of k_B)."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
import scipy.special

from ..exceptions import ContractViolation
from .operator import QOperator
from .spectral import DEFAULT_EPS_LOG, floored_log, herm_eig

__all__ = [
    "TRACE_TOL",
    "HERM_TOL",
    "POSITIVITY_TOL",
    "von_neumann_entropy",
    "relative_entropy",
    "trace_distance",
    "density_diagnostics",
    "assert_density_matrix",
]

logger = logging.getLogger("genro_qthermo.qmath")

TRACE_TOL = 1e-9
HERM_TOL = 1e-10
POSITIVITY_TOL = 1e-9


def von_neumann_entropy(rho: QOperator) -> float:
    """
    S(rho) = -sum_i lambda_i ln lambda_i, with 0 ln 0 = 0.

    Slightly negative eigenvalues (rounding) are clamped to zero; anything
    below -1e-9 is clamped too but logged.
    """
    values = scipy.linalg.eigvalsh(0.5 * (rho.data + rho.data.conj().T))
    lowest = float(values[0])
    if lowest < -POSITIVITY_TOL:
        logger.warning(f"entropy: clamping negative eigenvalue {lowest:.3e}")
    clamped = np.clip(values, 0.0, None)
    return float(max(np.sum(scipy.special.entr(clamped)), 0.0))


def relative_entropy(rho: QOperator, sigma: QOperator, eps_log: float = DEFAULT_EPS_LOG) -> float:
    """
    S(rho || sigma) = tr(rho ln rho - rho ln sigma), logs floored at eps_log.

    Returns ``inf`` when rho carries weight above eps_log on the subspace where
    sigma's eigenvalues fall below the floor (support violation).
    """
    sigma_values, sigma_vectors = herm_eig(sigma)
    kernel = sigma_vectors.data[:, sigma_values < eps_log]
    if kernel.shape[1]:
        weight = float(np.real(np.trace(kernel.conj().T @ rho.data @ kernel)))
        if weight > eps_log:
            return float("inf")
    difference = floored_log(rho, eps_log).data - floored_log(sigma, eps_log).data
    return float(np.real(np.trace(rho.data @ difference)))


def trace_distance(rho: QOperator, sigma: QOperator) -> float:
    """Half the trace norm of rho - sigma."""
    delta = rho.data - sigma.data
    values = scipy.linalg.eigvalsh(0.5 * (delta + delta.conj().T))
    return float(0.5 * np.sum(np.abs(values)))


def density_diagnostics(rho: QOperator) -> tuple[float, float, float]:
    """
    Return (|tr - 1|, max |rho - rho^dagger|, min eigenvalue).
    """
    trace_err = abs(rho.trace() - 1.0)
    herm_err = float(np.max(np.abs(rho.data - rho.data.conj().T), initial=0.0))
    min_eig = float(scipy.linalg.eigvalsh(0.5 * (rho.data + rho.data.conj().T))[0])
    return trace_err, herm_err, min_eig


def assert_density_matrix(rho: QOperator) -> None:
    """
    Raise ContractViolation unless rho is a density matrix within tolerance.

    Tolerances: |tr - 1| <= 1e-9, Hermiticity <= 1e-10, min eigenvalue >= -1e-9.
    """
    trace_err, herm_err, min_eig = density_diagnostics(rho)
    if trace_err > TRACE_TOL:
        raise ContractViolation(f"trace off by {trace_err:.3e}")
    if herm_err > HERM_TOL:
        raise ContractViolation(f"not Hermitian (deviation {herm_err:.3e})")
    if min_eig < -POSITIVITY_TOL:
        raise ContractViolation(f"negative eigenvalue {min_eig:.3e}")
