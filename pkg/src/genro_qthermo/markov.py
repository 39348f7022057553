# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Markovian dissipators D_M_j in secular GKSL form.

A Markovian bath couples to its qubit through sigma^x_j. The coupling is
split into eigenoperators of H_s,

    A(w) = sum_{e' - e = w} P(e) A P(e'),      [H_s, A(w)] = -w A(w),

and every positive Bohr frequency w contributes two channels: emission
(A(w), gamma_down(w)) and absorption (A(w)^dagger, gamma_up(w)). Rates come
from an ohmic spectral density J(w) = kappa w:

    gamma_down = kappa w (n + 1),   gamma_up = kappa w n,   n = 1 / (e^{w/T} - 1)

so gamma_down / gamma_up = e^{w/T} and the local Gibbs state
e^{-H_s/T_j} / Z is a fixed point of D_M_j.

Definition::

    def eigenoperators(h_s, a) -> list[Eigenoperator]
    def ohmic_rates(omega, T, kappa) -> RatePair
    def lindblad_dissipator(rho_s, channels) -> QOperator
    def build_markov_generator(bath, qubit_index, h_s, rate_fn=ohmic_rates)
        -> MarkovDissipator
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError, ContractViolation
from .model import SIGMA_X, MarkovianBath
from .qmath import QOperator, embed, herm_eig, identity, kron
from .types import ComplexMatrix, RateFunction

__all__ = [
    "Eigenoperator",
    "RatePair",
    "Channel",
    "MarkovDissipator",
    "eigenoperators",
    "ohmic_rates",
    "lindblad_dissipator",
    "build_markov_generator",
]

logger = logging.getLogger("genro_qthermo.markov")

BLOCK_TOL = 1e-12
FREQ_REL_TOL = 1e-9
# exp(x) overflows float64 past ~709
_EXP_LIMIT = 700.0


@dataclass(frozen=True, slots=True)
class Eigenoperator:
    """A(omega) for one Bohr frequency omega = e' - e (signed)."""

    omega: float
    op: QOperator


@dataclass(frozen=True, slots=True)
class RatePair:
    """Emission and absorption rates of one positive Bohr frequency."""

    gamma_down: float
    gamma_up: float

    def __post_init__(self) -> None:
        if self.gamma_down < 0 or self.gamma_up < 0:
            raise ContractViolation(f"rates must be >= 0, got {self}")


@dataclass(frozen=True, slots=True)
class Channel:
    """One GKSL channel: jump operator, rate and signed Bohr frequency."""

    jump: QOperator
    rate: float
    omega: float


def _cluster_levels(values: np.ndarray) -> list[tuple[float, list[int]]]:
    scale = max(1.0, float(np.max(np.abs(values), initial=0.0)))
    levels: list[tuple[float, list[int]]] = []
    for i, value in enumerate(values):
        if levels and abs(value - levels[-1][0]) <= FREQ_REL_TOL * scale:
            levels[-1][1].append(i)
        else:
            levels.append((float(value), [i]))
    return levels


def eigenoperators(h_s: QOperator, a: QOperator) -> list[Eigenoperator]:
    """
    Decompose ``a`` into eigenoperators of ``h_s``.

    Returns one entry per distinct Bohr frequency with a nonzero block,
    sorted by omega. Frequencies closer than 1e-9 * max|omega| are merged.

    Raises:
        ContractViolation: If h_s is not Hermitian.
    """
    values, vectors = herm_eig(h_s)
    v = vectors.data
    projectors = [
        (energy, v[:, idx] @ v[:, idx].conj().T) for energy, idx in _cluster_levels(values)
    ]

    blocks: list[tuple[float, ComplexMatrix]] = []
    for e, p in projectors:
        for e_prime, p_prime in projectors:
            block = p @ a.data @ p_prime
            if np.max(np.abs(block), initial=0.0) > BLOCK_TOL:
                blocks.append((e_prime - e, block))
    if not blocks:
        return []

    tol = FREQ_REL_TOL * max(abs(w) for w, _ in blocks)
    blocks.sort(key=lambda item: item[0])
    grouped: list[tuple[float, ComplexMatrix]] = []
    for omega, block in blocks:
        if grouped and abs(omega - grouped[-1][0]) <= tol:
            grouped[-1] = (grouped[-1][0], grouped[-1][1] + block)
        else:
            grouped.append((omega, block))
    return [Eigenoperator(omega, QOperator(block, h_s.dims)) for omega, block in grouped]


def ohmic_rates(omega: float, T: float, kappa: float) -> RatePair:
    """
    Detailed-balance rates of an ohmic bath at a positive Bohr frequency.

    Raises:
        ContractViolation: If omega <= 0, T <= 0 or kappa < 0.
    """
    if not omega > 0:
        raise ContractViolation(f"Bohr frequency must be > 0, got {omega}")
    if not T > 0:
        raise ContractViolation(f"temperature must be > 0, got {T}")
    if kappa < 0:
        raise ContractViolation(f"kappa must be >= 0, got {kappa}")
    x = omega / T
    n_bar = 0.0 if x > _EXP_LIMIT else 1.0 / math.expm1(x)
    spectral = kappa * omega
    return RatePair(gamma_down=spectral * (n_bar + 1.0), gamma_up=spectral * n_bar)


def lindblad_dissipator(
    rho_s: QOperator, channels: Iterable[tuple[QOperator, float]]
) -> QOperator:
    """
    sum gamma (L rho L^dagger - 1/2 {L^dagger L, rho}).

    Raises:
        ContractViolation: On a negative rate.
    """
    out = np.zeros_like(rho_s.data)
    rho = rho_s.data
    for jump, rate in channels:
        if rate < 0:
            raise ContractViolation(f"negative rate {rate}")
        L = jump.data
        L_dag = L.conj().T
        LdL = L_dag @ L
        out += rate * (L @ rho @ L_dag - 0.5 * (LdL @ rho + rho @ LdL))
    return QOperator(out, rho_s.dims)


class MarkovDissipator:
    """
    Immutable D_M_j closure.

    Holds the channels and the precomputed decay operator K = sum gamma L^dagger L.
    Calling it maps rho to D_M_j(rho); ``lift`` returns the same dissipator
    acting as identity on spin-star bath factors.
    """

    __slots__ = ("channels", "qubit_index", "temperature", "decay", "_jumps")

    def __init__(
        self, channels: Sequence[Channel], qubit_index: int, temperature: float
    ) -> None:
        if not channels:
            raise ContractViolation("a Markovian dissipator needs at least one channel")
        for channel in channels:
            if channel.rate < 0:
                raise ContractViolation(f"negative rate {channel.rate} at omega={channel.omega}")
        self.channels: tuple[Channel, ...] = tuple(channels)
        self.qubit_index = qubit_index
        self.temperature = temperature
        first = self.channels[0].jump
        decay = np.zeros_like(first.data)
        jumps = []
        for channel in self.channels:
            L = channel.jump.data
            L_dag = L.conj().T
            decay += channel.rate * (L_dag @ L)
            jumps.append((L, L_dag, channel.rate))
        self.decay: ComplexMatrix = decay
        self._jumps = tuple(jumps)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.channels[0].jump.dims

    def apply(self, rho: ComplexMatrix) -> ComplexMatrix:
        """D(rho) on a bare matrix."""
        out = -0.5 * (self.decay @ rho + rho @ self.decay)
        for L, L_dag, rate in self._jumps:
            if rate:
                out += rate * (L @ rho @ L_dag)
        return out

    def jump_term(self, rho: ComplexMatrix) -> ComplexMatrix:
        """sum gamma L rho L^dagger only (the decay part lives in H_eff)."""
        out = np.zeros_like(rho)
        for L, L_dag, rate in self._jumps:
            if rate:
                out += rate * (L @ rho @ L_dag)
        return out

    def __call__(self, rho: QOperator) -> QOperator:
        return QOperator(self.apply(rho.data), rho.dims)

    def lift(self, bath_dims: Sequence[int]) -> MarkovDissipator:
        """The dissipator as D (x) id on appended bath factors."""
        if not bath_dims:
            return self
        eye = identity(tuple(bath_dims))
        lifted = [Channel(kron(c.jump, eye), c.rate, c.omega) for c in self.channels]
        return MarkovDissipator(lifted, self.qubit_index, self.temperature)

    def positive_frequency_rates(self) -> list[tuple[float, RatePair]]:
        """(omega, RatePair) for each positive Bohr frequency, pairing channels."""
        down = {c.omega: c.rate for c in self.channels if c.omega > 0}
        up = {-c.omega: c.rate for c in self.channels if c.omega < 0}
        return [(w, RatePair(down[w], up.get(w, 0.0))) for w in sorted(down)]

    def __repr__(self) -> str:
        """Return string representation."""
        return (
            f"MarkovDissipator(qubit={self.qubit_index + 1}, T={self.temperature}, "
            f"channels={len(self.channels)}, dims={self.dims})"
        )


def build_markov_generator(
    bath: MarkovianBath,
    qubit_index: int,
    h_s: QOperator,
    rate_fn: RateFunction = ohmic_rates,
) -> MarkovDissipator:
    """
    D_M_j for the Markovian bath attached to ``qubit_index``.

    The coupling operator is sigma^x on that qubit. Rates are evaluated by
    ``rate_fn(omega, T, kappa)`` at each positive Bohr frequency.

    Raises:
        ConfigError: If the coupling has a nonzero zero-frequency component
            (degenerate transitions), or the qubit index is out of range.
    """
    if not 0 <= qubit_index < len(h_s.dims):
        raise ConfigError(f"qubit {qubit_index + 1} out of range", field="bath")
    if not isinstance(bath, MarkovianBath):
        raise ConfigError(f"bath of qubit {qubit_index + 1} is not Markovian", field="bath")
    coupling = embed(SIGMA_X, qubit_index, h_s.dims)
    channels: list[Channel] = []
    for eig in eigenoperators(h_s, coupling):
        scale = max(1.0, abs(eig.omega))
        if abs(eig.omega) <= FREQ_REL_TOL * scale:
            raise ConfigError(
                f"coupling of qubit {qubit_index + 1} has a zero-frequency component",
                field="omegas",
            )
        if eig.omega < 0:
            continue
        rates = rate_fn(eig.omega, bath.T, bath.kappa)
        channels.append(Channel(eig.op, rates.gamma_down, eig.omega))
        channels.append(Channel(eig.op.dag(), rates.gamma_up, -eig.omega))
        logger.debug(
            f"qubit {qubit_index + 1}: omega={eig.omega:.6g} "
            f"gamma_down={rates.gamma_down:.6g} gamma_up={rates.gamma_up:.6g}"
        )
    return MarkovDissipator(channels, qubit_index, bath.T)
