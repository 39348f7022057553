# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Thermodynamic functionals of the reduced system state.

Sign conventions (hbar = k_B = 1):

- heat current J_j = tr(H_s D_j(rho_s)) is the dissipative rate of change of
  the system energy through bath j; positive when the system gains energy.
- entropy production rate sigma = dS/dt - sum_j J_j / T_j.
- witness M = sum_{j spin-star} tr(D_NM_j (ln rho_s - ln rho_th_j)) and
  quantifier Mbar = sum_{j spin-star} |tr(D_NM_j (ln rho_s - ln rho_th_j))|.
- modified Spohn margin sigma + M, which equals
  -sum_{j Markovian} tr(D_M_j (ln rho_s - ln rho_th_j)) >= 0.

Partial superoperators L_j share the commutator -i[H_s, rho_s]: the
Markovian group gets weight p (split evenly), the spin-star group 1 - p. When
one group is empty the other takes the whole commutator. Every quantity
above is independent of p because the commutator is traceless against H_s,
ln rho_s and ln rho_th_j.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..dynamics import (
    GeneratorBundle,
    JointState,
    NMInteraction,
    ReducedTerms,
    nm_dissipator,
    reduced_terms,
    system_marginal,
)
from ..exceptions import ContractViolation, NumericalConsistencyError
from ..markov import MarkovDissipator
from ..model import SimulationConfig
from ..qmath import (
    DEFAULT_EPS_LOG,
    QOperator,
    density_diagnostics,
    floored_log,
    von_neumann_entropy,
)
from .records import ReferenceStates, ThermoRecord

__all__ = [
    "IMAG_TOL",
    "heat_current_markov",
    "heat_current_nm",
    "entropy_rate",
    "epr",
    "partial_superoperators",
    "epr_relative_entropy",
    "witness_summands",
    "witness",
    "quantifier",
    "spohn_check",
    "bath_terms",
    "ThermoAnalyzer",
]

logger = logging.getLogger("genro_qthermo.thermo")

IMAG_TOL = 1e-8
FLOOR_FACTOR = 10.0


def _real(value: complex, quantity: str) -> float:
    residue = abs(complex(value).imag)
    if residue > IMAG_TOL:
        raise NumericalConsistencyError(quantity, residue)
    return float(complex(value).real)


def _tr_product(a: QOperator, b: QOperator) -> complex:
    # tr(AB) without forming AB
    return complex(np.sum(a.data * b.data.T))


def heat_current_markov(rho_s: QOperator, d_mj: MarkovDissipator, h_s: QOperator) -> float:
    """J_j = tr(H_s D_M_j(rho_s))."""
    return _real(_tr_product(h_s, d_mj(rho_s)), "J_M")


def heat_current_nm(state: JointState, interaction: NMInteraction, h_s: QOperator) -> float:
    """J_j = tr(H_s D_NM_j) for the spin-star bath of ``interaction``."""
    return _real(_tr_product(h_s, nm_dissipator(state, interaction)), "J_NM")


def entropy_rate(
    rho_s: QOperator, total_rhs: QOperator, eps_log: float = DEFAULT_EPS_LOG
) -> float:
    """dS/dt = -tr(d rho_s/dt ln rho_s), with the floored logarithm."""
    return -_real(_tr_product(total_rhs, floored_log(rho_s, eps_log)), "dS/dt")


def epr(
    entropy_rate: float, currents: Sequence[float], temperatures: Sequence[float]
) -> float:
    """
    sigma = dS/dt - sum_j J_j / T_j.

    Raises:
        ContractViolation: On non-positive temperatures or length mismatch.
    """
    if len(currents) != len(temperatures):
        raise ContractViolation(f"{len(currents)} currents for {len(temperatures)} temperatures")
    if any(not T > 0 for T in temperatures):
        raise ContractViolation(f"temperatures must be > 0, got {tuple(temperatures)}")
    return entropy_rate - sum(J / T for J, T in zip(currents, temperatures))


def bath_terms(terms: ReducedTerms, generator: GeneratorBundle) -> tuple[QOperator, ...]:
    """D_M_j / D_NM_j of every bath, in qubit order."""
    by_qubit: dict[int, QOperator] = {}
    for dissipator, term in zip(generator.system_dissipators, terms.markov):
        by_qubit[dissipator.qubit_index] = term
    for interaction, term in zip(generator.nm_interactions, terms.nm):
        by_qubit[interaction.qubit_index] = term
    return tuple(by_qubit[q] for q in sorted(by_qubit))


def partial_superoperators(
    terms: ReducedTerms, p: float, generator: GeneratorBundle
) -> tuple[QOperator, ...]:
    """
    Per-bath L_j(rho_s), in qubit order.

    L_j = D_M_j + (p/m) C for the m Markovian baths and
    L_j = D_NM_j + ((1-p)/n) C for the n spin-star baths, C = -i[H_s, rho_s].
    """
    if not 0.0 <= p <= 1.0:
        raise ContractViolation(f"p must lie in [0, 1], got {p}")
    m = len(terms.markov)
    n = len(terms.nm)
    if n == 0:
        share_m, share_nm = 1.0 / m, 0.0
    elif m == 0:
        share_m, share_nm = 0.0, 1.0 / n
    else:
        share_m, share_nm = p / m, (1.0 - p) / n
    by_qubit: dict[int, QOperator] = {}
    for dissipator, term in zip(generator.system_dissipators, terms.markov):
        by_qubit[dissipator.qubit_index] = term + share_m * terms.commutator
    for interaction, term in zip(generator.nm_interactions, terms.nm):
        by_qubit[interaction.qubit_index] = term + share_nm * terms.commutator
    return tuple(by_qubit[q] for q in sorted(by_qubit))


def epr_relative_entropy(
    rho_s: QOperator,
    partials: Sequence[QOperator],
    references: ReferenceStates,
    eps_log: float = DEFAULT_EPS_LOG,
    log_rho: QOperator | None = None,
) -> float:
    """sigma in relative-entropy form: -sum_j tr(L_j (ln rho_s - ln rho_th_j))."""
    if len(partials) != len(references):
        raise ContractViolation(f"{len(partials)} partial terms for {len(references)} baths")
    log_rho = log_rho if log_rho is not None else floored_log(rho_s, eps_log)
    total = 0j
    for L_j, log_th in zip(partials, references.logs):
        total += _tr_product(L_j, log_rho - log_th)
    return -_real(total, "sigma (relative-entropy form)")


def witness_summands(
    rho_s: QOperator,
    nm_terms: Sequence[QOperator],
    nm_reference_logs: Sequence[QOperator],
    eps_log: float = DEFAULT_EPS_LOG,
    log_rho: QOperator | None = None,
) -> tuple[float, ...]:
    """tr(D_NM_j (ln rho_s - ln rho_th_j)) for each spin-star bath."""
    log_rho = log_rho if log_rho is not None else floored_log(rho_s, eps_log)
    return tuple(
        _real(_tr_product(term, log_rho - log_th), "M_NM")
        for term, log_th in zip(nm_terms, nm_reference_logs)
    )


def _nm_summands(
    state: JointState,
    references: ReferenceStates,
    interactions: Sequence[NMInteraction],
    eps_log: float,
) -> tuple[float, ...]:
    if not interactions:
        return ()
    rho_s = system_marginal(state.rho, interactions[0].n_qubits)
    terms = [nm_dissipator(state, i) for i in interactions]
    logs = [references.logs[i.qubit_index] for i in interactions]
    return witness_summands(rho_s, terms, logs, eps_log)


def witness(
    state: JointState,
    references: ReferenceStates,
    interactions: Sequence[NMInteraction],
    eps_log: float = DEFAULT_EPS_LOG,
) -> float:
    """Non-Markovianity witness M (0 without spin-star baths)."""
    return float(sum(_nm_summands(state, references, interactions, eps_log)))


def quantifier(
    state: JointState,
    references: ReferenceStates,
    interactions: Sequence[NMInteraction],
    eps_log: float = DEFAULT_EPS_LOG,
) -> float:
    """Non-Markovianity quantifier Mbar >= 0."""
    return float(sum(abs(x) for x in _nm_summands(state, references, interactions, eps_log)))


def spohn_check(sigma: float, witness: float) -> float:
    """Modified Spohn margin sigma + M."""
    return sigma + witness


class ThermoAnalyzer:
    """
    Turns joint states into ThermoRecords for one generator and config.

    Reference states are built once from the composite H_s and the bath
    temperatures.

    Example:
        >>> analyzer = ThermoAnalyzer(generator, config)
        >>> record = analyzer.record(state)
    """

    def __init__(self, generator: GeneratorBundle, config: SimulationConfig) -> None:
        self.generator = generator
        self.temperatures = config.temperatures
        self.p_weight = config.p_weight
        self.eps_log = config.eps_log
        self.references = ReferenceStates.build(generator.h_s, self.temperatures)
        self.nm_reference_logs = tuple(self.references.logs[i.qubit_index] for i in generator.nm_interactions)

    def terms(self, state: JointState) -> ReducedTerms:
        return reduced_terms(state, self.generator)

    def record(self, state: JointState) -> ThermoRecord:
        """All functionals at ``state``."""
        terms = self.terms(state)
        rho_s = terms.rho_s
        h_s = self.generator.h_s
        log_rho = floored_log(rho_s, self.eps_log)
        total = terms.total

        currents = tuple(_real(_tr_product(h_s, d), "J") for d in bath_terms(terms, self.generator))
        d_entropy = -_real(_tr_product(total, log_rho), "dS/dt")
        sigma = epr(d_entropy, currents, self.temperatures)
        summands = witness_summands(rho_s, terms.nm, self.nm_reference_logs, self.eps_log, log_rho)
        m_nm = float(sum(summands))
        partials = partial_superoperators(terms, self.p_weight, self.generator)

        trace_err, _, min_eig = density_diagnostics(state.rho)
        _, _, min_eig_s = density_diagnostics(rho_s)
        return ThermoRecord(
            t=state.t,
            energy=_real(_tr_product(h_s, rho_s), "E"),
            entropy=von_neumann_entropy(rho_s),
            entropy_rate=d_entropy,
            currents=currents,
            epr=sigma,
            witness=m_nm,
            quantifier=float(sum(abs(x) for x in summands)),
            spohn_margin=spohn_check(sigma, m_nm),
            trace_err=trace_err,
            min_eig=min_eig,
            log_floored=min_eig_s < FLOOR_FACTOR * self.eps_log,
            global_current=_real(_tr_product(h_s, total), "J_global"),
            epr_relative=epr_relative_entropy(
                rho_s, partials, self.references, self.eps_log, log_rho
            ),
        )

    def __repr__(self) -> str:
        """Return string representation."""
        return f"ThermoAnalyzer(baths={len(self.temperatures)}, p={self.p_weight}, eps_log={self.eps_log})"
