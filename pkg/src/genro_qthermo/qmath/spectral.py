# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Hermitian eigendecomposition and matrix functions.

All matrix functions go through the spectral theorem: for Hermitian h with
h = V diag(lambda) V^dagger, f(h) = V diag(f(lambda)) V^dagger.

Logarithms of density matrices use an eigenvalue floor: eigenvalues are
clamped to max(lambda, eps_log) and the spectrum is renormalized to unit trace
before taking ln. A pure state has ln rho singular; the floor keeps every
quantity built on ln rho finite and reproducible.
"""

from __future__ import annotations

from typing import Any, Callable

import numpy as np
import scipy.linalg

from ..exceptions import ContractViolation, DomainError
from ..types import RealVector
from .operator import QOperator

__all__ = ["HERMITIAN_TOL", "DEFAULT_EPS_LOG", "herm_eig", "mat_func_hermitian", "floored_log"]

HERMITIAN_TOL = 1e-10
DEFAULT_EPS_LOG = 1e-12


def herm_eig(h: QOperator, tol: float = HERMITIAN_TOL) -> tuple[RealVector, QOperator]:
    """
    Eigendecomposition of a Hermitian operator.

    Args:
        h: Operator, Hermitian within ``tol`` in max norm.
        tol: Hermiticity tolerance.

    Returns:
        (eigenvalues ascending, unitary whose columns are the eigenvectors).

    Raises:
        ContractViolation: If h is not Hermitian within tol.
    """
    deviation = float(np.max(np.abs(h.data - h.data.conj().T), initial=0.0))
    if deviation > tol:
        raise ContractViolation(f"operator is not Hermitian (max |h - h^dagger| = {deviation:.3e})")
    values, vectors = scipy.linalg.eigh(0.5 * (h.data + h.data.conj().T))
    return values, QOperator(vectors, h.dims)


def mat_func_hermitian(h: QOperator, f: Callable[[Any], Any]) -> QOperator:
    """
    Apply a real scalar function to a Hermitian operator.

    ``f`` may be a numpy ufunc, which receives the whole eigenvalue array, or
    a plain scalar function such as ``math.log``, which is applied eigenvalue
    by eigenvalue.

    Raises:
        ContractViolation: If h is not Hermitian.
        DomainError: If f is undefined (nan, inf, floating-point error) at an
            eigenvalue.
    """
    values, vectors = herm_eig(h)
    try:
        with np.errstate(divide="raise", invalid="raise"):
            mapped = _apply(f, values)
    except (ArithmeticError, ValueError) as e:
        raise DomainError(f"function undefined on spectrum {values}: {e}") from e
    if mapped.shape != values.shape or not np.all(np.isfinite(mapped)):
        raise DomainError(f"function undefined on spectrum {values}")
    v = vectors.data
    return QOperator((v * mapped) @ v.conj().T, h.dims)


def _apply(f: Callable[[Any], Any], values: RealVector) -> RealVector:
    try:
        return np.asarray(f(values), dtype=np.float64)
    except TypeError:
        # scalar-only function
        return np.array([f(float(x)) for x in values], dtype=np.float64)


def floored_log(rho: QOperator, eps_log: float = DEFAULT_EPS_LOG) -> QOperator:
    """
    ln rho with eigenvalues clamped to ``eps_log`` and renormalized.

    The result commutes with rho, so tr([X, rho] ln rho) = 0 still holds for
    any X.
    """
    values, vectors = herm_eig(rho)
    clamped = np.maximum(values, eps_log)
    clamped = clamped / clamped.sum()
    v = vectors.data
    return QOperator((v * np.log(clamped)) @ v.conj().T, rho.dims)
