# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Type definitions for genro-qthermo.

Purpose
=======
Shared aliases for the numerical core. Arrays are numpy arrays; operators
travel as :class:`~genro_qthermo.qmath.QOperator` (matrix plus factor dims).

Type Definitions
================

ComplexMatrix : numpy.typing.NDArray[numpy.complex128]
    Dense square complex matrix, the payload of a QOperator.

RealVector : numpy.typing.NDArray[numpy.float64]
    Eigenvalues, populations.

Observer : Callable[[JointState], None]
    Callback invoked by the integrator on every recorded sample. Must not
    mutate the state it receives.

RateFunction : Callable[[float, float, float], RatePair]
    Maps (omega, T, kappa) to emission/absorption rates. The default is
    :func:`genro_qthermo.markov.ohmic_rates`.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import numpy as np
import numpy.typing as npt

if TYPE_CHECKING:
    from .dynamics import JointState
    from .markov import RatePair

__all__ = ["ComplexMatrix", "RealVector", "Observer", "RateFunction"]

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

Observer = Callable[["JointState"], None]
RateFunction = Callable[[float, float, float], "RatePair"]
