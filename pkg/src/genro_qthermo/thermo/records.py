# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Per-sample thermodynamic record and the local thermal reference states."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import scipy.special

from ..model import gibbs_state
from ..qmath import QOperator, herm_eig

__all__ = ["ThermoRecord", "ReferenceStates"]


@dataclass(frozen=True, slots=True)
class ThermoRecord:
    """
    Thermodynamic functionals at one recorded time (hbar = k_B = 1).

    Attributes:
        t: Time.
        energy: E = tr(H_s rho_s).
        entropy: von Neumann entropy of rho_s.
        entropy_rate: dS/dt = -tr(d rho_s/dt ln rho_s).
        currents: Heat current J_j of every bath, in qubit order.
        epr: Entropy production rate dS/dt - sum_j J_j / T_j.
        witness: sum over spin-star baths of tr(D_NM_j (ln rho_s - ln rho_th_j)).
        quantifier: Same sum with every summand in absolute value.
        spohn_margin: epr + witness (non-negative up to tolerance).
        trace_err: |tr rho - 1| of the joint state.
        min_eig: Smallest eigenvalue of the joint state.
        log_floored: ln rho_s is floor-dominated (min eig of rho_s < 10 eps_log).
        global_current: tr(H_s d rho_s/dt); equals sum(currents).
        epr_relative: -sum_j tr(L_j (ln rho_s - ln rho_th_j)); equals epr.
    """

    t: float
    energy: float
    entropy: float
    entropy_rate: float
    currents: tuple[float, ...]
    epr: float
    witness: float
    quantifier: float
    spohn_margin: float
    trace_err: float
    min_eig: float
    log_floored: bool
    global_current: float
    epr_relative: float


@dataclass(frozen=True, slots=True)
class ReferenceStates:
    """
    Local canonical states rho_th_j = e^{-H_s/T_j} / Z_j, one per bath.

    Built on the full composite H_s. ``logs`` holds ln rho_th_j in closed form,
    -(H_s - E_0)/T_j - ln Z_j, so no eigenvalue floor is involved: the Gibbs
    state has full rank at every T > 0, even where its smallest weight
    underflows.
    """

    states: tuple[QOperator, ...]
    logs: tuple[QOperator, ...]
    temperatures: tuple[float, ...]

    @classmethod
    def build(cls, h_s: QOperator, temperatures: Sequence[float]) -> ReferenceStates:
        values, vectors = herm_eig(h_s)
        v = vectors.data
        logs = []
        for T in temperatures:
            exponent = -(values - values[0]) / T
            log_weights = exponent - scipy.special.logsumexp(exponent)
            logs.append(QOperator((v * log_weights) @ v.conj().T, h_s.dims).symmetrized())
        states = tuple(gibbs_state(h_s, T) for T in temperatures)
        return cls(states, tuple(logs), tuple(float(T) for T in temperatures))

    def __len__(self) -> int:
        return len(self.states)
