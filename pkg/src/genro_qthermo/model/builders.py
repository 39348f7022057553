# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Operator builders for the qubit / spin-star model.

Basis convention: |0> is the excited state (sigma^z = +1), |1> the ground
state. sigma^+ = |0><1| raises, sigma^- = |1><0| lowers. J^+- of a spin-star
bath follow the same convention on every bath spin.

Joint layout: system qubits 1..K first, then one factor of dimension 2^N per
spin-star bath, in ascending owner-qubit order. Markovian baths carry no
factor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..exceptions import ConfigError
from ..qmath import QOperator, embed, herm_eig, identity, kron
from .specs import GHZ, Custom, ProductBasis, SimulationConfig, SpinStarBath, SystemSpec

if TYPE_CHECKING:
    from ..dynamics import JointState

__all__ = [
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

logger = logging.getLogger("genro_qthermo.model")

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)
SIGMA_X = SIGMA_PLUS + SIGMA_MINUS


@dataclass(frozen=True, slots=True)
class JointLayout:
    """
    Factor layout of the joint system-plus-spin-baths space.

    Attributes:
        n_qubits: Number of system qubits K.
        owners: 0-based qubit indices owning a spin-star bath, ascending.
        bath_dims: 2^N for each owner, same order.
    """

    n_qubits: int
    owners: tuple[int, ...] = ()
    bath_dims: tuple[int, ...] = ()

    @classmethod
    def from_config(cls, config: SimulationConfig) -> JointLayout:
        owners = config.spin_star_qubits
        dims = tuple(2 ** config.baths[q].n_spins for q in owners)  # type: ignore[union-attr]
        return cls(config.system.n_qubits, owners, dims)

    @property
    def system_dims(self) -> tuple[int, ...]:
        return (2,) * self.n_qubits

    @property
    def dims(self) -> tuple[int, ...]:
        return self.system_dims + self.bath_dims

    @property
    def system_factors(self) -> tuple[int, ...]:
        return tuple(range(self.n_qubits))

    @property
    def bath_factors(self) -> tuple[int, ...]:
        return tuple(range(self.n_qubits, self.n_qubits + len(self.owners)))

    def bath_factor(self, qubit_index: int) -> int:
        """Joint factor index of the spin-star bath owned by ``qubit_index``."""
        try:
            return self.n_qubits + self.owners.index(qubit_index)
        except ValueError:
            raise ConfigError(
                f"qubit {qubit_index + 1} has no spin-star bath", field="bath"
            ) from None


@dataclass(frozen=True, slots=True)
class SpinStarOperators:
    """H_B = nu J+J- and the collective ladder operators on one bath factor."""

    h_b: QOperator
    j_plus: QOperator
    j_minus: QOperator


def build_system_hamiltonian(spec: SystemSpec) -> QOperator:
    """H_s = sum_j (omega_j / 2) sigma^z_j on the 2^K system space."""
    dims = (2,) * spec.n_qubits
    h = QOperator(np.zeros((2**spec.n_qubits,) * 2), dims)
    for j, omega in enumerate(spec.omegas):
        h = h + embed(0.5 * omega * SIGMA_Z, j, dims)
    return h


def build_spin_star_bath(nu: float, n_spins: int) -> SpinStarOperators:
    """Collective operators J+- = sum_l sigma+-_(l) and H_B = nu J+J- on 2^N."""
    if n_spins < 1:
        raise ConfigError(f"n_spins must be >= 1, got {n_spins}", field="n_spins")
    dims = (2,) * n_spins
    side = 2**n_spins
    j_plus = QOperator(np.zeros((side, side)), dims)
    for spin in range(n_spins):
        j_plus = j_plus + embed(SIGMA_PLUS, spin, dims)
    j_minus = j_plus.dag()
    # one factor of dimension 2^N in the joint layout
    flat = (side,)
    return SpinStarOperators(
        h_b=QOperator(nu * (j_plus @ j_minus).data, flat),
        j_plus=QOperator(j_plus.data, flat),
        j_minus=QOperator(j_minus.data, flat),
    )


def build_xy_interaction(
    qubit_index: int, alpha: float, bath_ops: SpinStarOperators, layout: JointLayout
) -> QOperator:
    """
    H_I = alpha (sigma+_j (x) J-_j + sigma-_j (x) J+_j) on the joint space.

    Raises:
        ConfigError: If qubit_index does not own a spin-star bath in ``layout``
            or the bath operators do not fit its factor.
    """
    factor = layout.bath_factor(qubit_index)
    dims = layout.dims
    if bath_ops.j_minus.side != dims[factor]:
        raise ConfigError(
            f"bath operators of side {bath_ops.j_minus.side} do not fit factor of dim {dims[factor]}",
            field="n_spins",
        )
    raising = embed(SIGMA_PLUS, qubit_index, dims) @ embed(bath_ops.j_minus.data, factor, dims)
    lowering = embed(SIGMA_MINUS, qubit_index, dims) @ embed(bath_ops.j_plus.data, factor, dims)
    return alpha * (raising + lowering)


def gibbs_state(h: QOperator, T: float) -> QOperator:
    """
    e^{-h/T} / Z, with the ground energy subtracted before exponentiating.

    Raises:
        ConfigError: If T <= 0.
    """
    if not T > 0:
        raise ConfigError(f"temperature must be > 0, got {T}", field="T")
    values, vectors = herm_eig(h)
    weights = np.exp(-(values - values[0]) / T)
    weights /= weights.sum()
    v = vectors.data
    return QOperator((v * weights) @ v.conj().T, h.dims).symmetrized()


def initial_system_state(config: SimulationConfig) -> QOperator:
    """Pure initial system state rho_s(0) from ``config.initial_state``."""
    n = config.system.n_qubits
    side = 2**n
    state = config.initial_state
    psi = np.zeros(side, dtype=np.complex128)
    if isinstance(state, GHZ):
        psi[0] = psi[-1] = 1.0 / np.sqrt(2.0)
    elif isinstance(state, ProductBasis):
        psi[int(state.bits, 2)] = 1.0
    elif isinstance(state, Custom):
        psi = np.asarray(state.amplitudes, dtype=np.complex128)
        if psi.shape != (side,):
            raise ConfigError(
                f"custom state needs {side} amplitudes, got {psi.size}", field="initial_state"
            )
        norm = float(np.linalg.norm(psi))
        if norm == 0.0:
            raise ConfigError("custom state has zero norm", field="initial_state")
        psi = psi / norm
    else:
        raise ConfigError(f"unknown initial state {state!r}", field="initial_state")
    return QOperator(np.outer(psi, psi.conj()), (2,) * n)


def lift_system_operator(op: QOperator, layout: JointLayout) -> QOperator:
    """op (x) I on the spin-star factors (op itself when there are none)."""
    if not layout.bath_dims:
        return op
    return kron(op, identity(layout.bath_dims))


def initial_joint_state(config: SimulationConfig) -> JointState:
    """rho(0) = rho_s(0) (x) Gibbs(H_B_j, T_j) over the spin-star baths, at t = 0."""
    from ..dynamics import JointState

    rho = initial_system_state(config)
    for q in config.spin_star_qubits:
        bath = config.baths[q]
        assert isinstance(bath, SpinStarBath)
        ops = build_spin_star_bath(bath.nu, bath.n_spins)
        rho = kron(rho, gibbs_state(ops.h_b, bath.T))
    logger.debug(f"initial joint state dims={rho.dims}")
    return JointState(rho=rho, t=0.0)
