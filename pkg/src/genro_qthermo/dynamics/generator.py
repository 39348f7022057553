# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Joint-space generator of the mixed-bath dynamics.

The reduced equation for the system is not closed in rho_s alone because the
spin-star dissipators depend on the correlated system-bath state. The
generator therefore acts on the joint density matrix over
[system qubits..., spin-star baths...]:

    d rho / dt = -i [H_total, rho] + sum_j (D_M_j (x) id_baths)(rho)

    H_total = H_s (x) I + sum_j H_B_j + sum_j H_I_j

Tracing out the bath factors gives back, term by term,

    d rho_s / dt = -i [H_s, rho_s] + sum_j D_M_j(rho_s) + sum_j D_NM_j

with D_NM_j = -i tr_B [H_I_j, rho]. :func:`reduced_terms` returns those
pieces separately.

The right-hand side is evaluated in effective-Hamiltonian form

    d rho / dt = -i (H_eff rho - rho H_eff^dagger) + sum gamma L rho L^dagger
    H_eff = H_total - (i/2) sum gamma L^dagger L
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..exceptions import ContractViolation, DimensionError
from ..markov import MarkovDissipator, build_markov_generator, ohmic_rates
from ..model import (
    JointLayout,
    MarkovianBath,
    SimulationConfig,
    SpinStarBath,
    build_spin_star_bath,
    build_system_hamiltonian,
    build_xy_interaction,
    lift_system_operator,
)
from ..qmath import QOperator, embed, partial_trace
from ..types import ComplexMatrix, RateFunction

__all__ = [
    "JointState",
    "NMInteraction",
    "GeneratorBundle",
    "ReducedTerms",
    "assemble_generator",
    "system_marginal",
    "nm_dissipator",
    "reduced_terms",
]

logger = logging.getLogger("genro_qthermo.dynamics")


@dataclass(frozen=True, slots=True)
class JointState:
    """
    Joint density matrix at dimensionless time t.

    Attributes:
        rho: Density matrix over [system qubits..., spin-star baths...].
        t: Time.
        trace_drift: |tr - 1| removed by the last renormalization.
    """

    rho: QOperator
    t: float
    trace_drift: float = 0.0


@dataclass(frozen=True, slots=True)
class NMInteraction:
    """H_I_j of one spin-star bath, on the joint space."""

    qubit_index: int
    bath_factor: int
    h_i: QOperator
    n_qubits: int
    temperature: float


def system_marginal(op: QOperator, n_qubits: int) -> QOperator:
    """Trace out every factor past the first ``n_qubits``."""
    if len(op.dims) == n_qubits:
        return op
    return partial_trace(op, range(n_qubits))


def nm_dissipator(state: JointState, interaction: NMInteraction) -> QOperator:
    """D_NM_j = -i tr_baths [H_I_j, rho] on the system space."""
    h = interaction.h_i.data
    rho = state.rho.data
    commutator = QOperator(h @ rho - rho @ h, state.rho.dims)
    return -1j * system_marginal(commutator, interaction.n_qubits)


@dataclass(eq=False)
class GeneratorBundle:
    """
    Everything needed to evaluate the joint right-hand side.

    Attributes:
        h_total: H_s + sum H_B + sum H_I on the joint space.
        markov_dissipators: Lifted D_M_j, in qubit order.
        nm_interactions: One entry per spin-star bath, in qubit order.
        layout: Joint factor layout.
        h_s: System Hamiltonian on the 2^K system space.
        system_dissipators: D_M_j on the system space (unlifted).
    """

    h_total: QOperator
    markov_dissipators: tuple[MarkovDissipator, ...]
    nm_interactions: tuple[NMInteraction, ...]
    layout: JointLayout
    h_s: QOperator
    system_dissipators: tuple[MarkovDissipator, ...]
    h_eff: ComplexMatrix = field(init=False, repr=False)
    h_eff_dag: ComplexMatrix = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.h_total.is_hermitian():
            raise ContractViolation("total Hamiltonian is not Hermitian")
        h_eff = self.h_total.data.copy()
        for dissipator in self.markov_dissipators:
            h_eff = h_eff - 0.5j * dissipator.decay
        self.h_eff = h_eff
        self.h_eff_dag = h_eff.conj().T

    def rhs(self, rho: ComplexMatrix) -> ComplexMatrix:
        """d rho / dt on a bare joint matrix."""
        out = -1j * (self.h_eff @ rho - rho @ self.h_eff_dag)
        for dissipator in self.markov_dissipators:
            out += dissipator.jump_term(rho)
        return out

    def __call__(self, rho: QOperator) -> QOperator:
        return QOperator(self.rhs(rho.data), rho.dims)

    @property
    def n_qubits(self) -> int:
        return self.layout.n_qubits


def assemble_generator(
    config: SimulationConfig,
    h_s: QOperator | None = None,
    rate_fn: RateFunction = ohmic_rates,
) -> GeneratorBundle:
    """
    Build the joint generator for ``config``.

    Args:
        config: Validated configuration.
        h_s: System Hamiltonian override; defaults to sum (omega_j/2) sigma^z_j.
        rate_fn: Rate function for the Markovian channels.

    Raises:
        ConfigError: Propagated from the builders.
        DimensionError: If ``h_s`` does not live on the system space.
    """
    layout = JointLayout.from_config(config)
    if h_s is None:
        h_s = build_system_hamiltonian(config.system)
    elif h_s.dims != layout.system_dims:
        raise DimensionError(f"H_s dims {h_s.dims} do not match system dims {layout.system_dims}")

    h_total = lift_system_operator(h_s, layout)
    interactions: list[NMInteraction] = []
    system_dissipators: list[MarkovDissipator] = []
    for q, bath in enumerate(config.baths):
        if isinstance(bath, SpinStarBath):
            ops = build_spin_star_bath(bath.nu, bath.n_spins)
            factor = layout.bath_factor(q)
            h_i = build_xy_interaction(q, bath.alpha, ops, layout)
            h_total = h_total + embed(ops.h_b.data, factor, layout.dims) + h_i
            interactions.append(NMInteraction(q, factor, h_i, layout.n_qubits, bath.T))
        elif isinstance(bath, MarkovianBath):
            system_dissipators.append(build_markov_generator(bath, q, h_s, rate_fn))

    lifted = tuple(d.lift(layout.bath_dims) for d in system_dissipators)
    logger.info(
        f"generator: dims={layout.dims} markovian={len(lifted)} spin_star={len(interactions)}"
    )
    return GeneratorBundle(
        h_total=h_total,
        markov_dissipators=lifted,
        nm_interactions=tuple(interactions),
        layout=layout,
        h_s=h_s,
        system_dissipators=tuple(system_dissipators),
    )


@dataclass(frozen=True, slots=True)
class ReducedTerms:
    """
    Pieces of d rho_s / dt at one instant.

    ``markov`` follows the order of ``GeneratorBundle.system_dissipators`` and
    ``nm`` the order of ``GeneratorBundle.nm_interactions``.
    """

    rho_s: QOperator
    commutator: QOperator
    markov: tuple[QOperator, ...]
    nm: tuple[QOperator, ...]

    @property
    def total(self) -> QOperator:
        out = self.commutator
        for term in self.markov + self.nm:
            out = out + term
        return out


def reduced_terms(state: JointState, generator: GeneratorBundle) -> ReducedTerms:
    """Split d rho_s / dt into commutator, D_M_j and D_NM_j contributions."""
    rho_s = system_marginal(state.rho, generator.n_qubits)
    h = generator.h_s.data
    commutator = QOperator(-1j * (h @ rho_s.data - rho_s.data @ h), rho_s.dims)
    markov = tuple(d(rho_s) for d in generator.system_dissipators)
    nm = tuple(nm_dissipator(state, i) for i in generator.nm_interactions)
    return ReducedTerms(rho_s=rho_s, commutator=commutator, markov=markov, nm=nm)
