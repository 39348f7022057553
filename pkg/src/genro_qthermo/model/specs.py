# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Configuration value types for a simulation.

Definition::

    SystemSpec(omegas)
    MarkovianBath(T, kappa)
    SpinStarBath(T, nu, alpha, n_spins)
    GHZ() | ProductBasis(bits) | Custom(amplitudes)
    IntegratorSettings(dt, t_max, record_stride)
    SimulationConfig(system, baths, initial_state, integrator,
                     p_weight, eps_log, tol_spohn, observers)

All types are frozen dataclasses validated in ``__post_init__``; an invalid
value raises ConfigError naming the offending field. Units are dimensionless
(hbar = k_B = 1, frequencies in units of the bath frequency scale).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from ..exceptions import ConfigError

__all__ = [
    "SystemSpec",
    "MarkovianBath",
    "SpinStarBath",
    "BathSpec",
    "GHZ",
    "ProductBasis",
    "Custom",
    "InitialState",
    "IntegratorSettings",
    "SimulationConfig",
]


@dataclass(frozen=True, slots=True)
class SystemSpec:
    """Non-interacting qubits, H_s = sum_j (omega_j / 2) sigma^z_j."""

    omegas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "omegas", tuple(float(w) for w in self.omegas))
        if not self.omegas:
            raise ConfigError("at least one qubit is required", field="omegas")
        for j, w in enumerate(self.omegas, start=1):
            if not w > 0:
                raise ConfigError(f"omega_{j} must be > 0, got {w}", field="omegas")

    @property
    def n_qubits(self) -> int:
        return len(self.omegas)


@dataclass(frozen=True, slots=True)
class MarkovianBath:
    """Ohmic bath J(w) = kappa * w, eliminated in Born-Markov."""

    T: float
    kappa: float

    kind = "markovian"

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ConfigError(f"temperature must be > 0, got {self.T}", field="T")
        if self.kappa < 0:
            raise ConfigError(f"kappa must be >= 0, got {self.kappa}", field="kappa")


@dataclass(frozen=True, slots=True)
class SpinStarBath:
    """N spin-1/2 particles, H_B = nu J+J-, XY-coupled to one qubit."""

    T: float
    nu: float
    alpha: float
    n_spins: int = 1

    kind = "spin_star"

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ConfigError(f"temperature must be > 0, got {self.T}", field="T")
        if not self.nu > 0:
            raise ConfigError(f"nu must be > 0, got {self.nu}", field="nu")
        if self.alpha < 0:
            raise ConfigError(f"alpha must be >= 0, got {self.alpha}", field="alpha")
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise ConfigError(f"n_spins must be an integer >= 1, got {self.n_spins}", field="n_spins")
        object.__setattr__(self, "n_spins", int(self.n_spins))


BathSpec = Union[MarkovianBath, SpinStarBath]


@dataclass(frozen=True, slots=True)
class GHZ:
    """(|0...0> + |1...1>) / sqrt(2) on the system qubits."""


@dataclass(frozen=True, slots=True)
class ProductBasis:
    """Computational basis state; ``bits[0]`` is qubit 1, '0' is excited."""

    bits: str

    def __post_init__(self) -> None:
        if not self.bits or set(self.bits) - {"0", "1"}:
            raise ConfigError(f"bits must be a non-empty 0/1 string, got {self.bits!r}", field="bits")


@dataclass(frozen=True, slots=True)
class Custom:
    """Arbitrary pure state given by its amplitude vector (normalized on use)."""

    amplitudes: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))


InitialState = Union[GHZ, ProductBasis, Custom]


@dataclass(frozen=True, slots=True)
class IntegratorSettings:
    """Fixed-step RK4 schedule."""

    dt: float = 2e-4
    t_max: float = 50.0
    record_stride: int = 50

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ConfigError(f"dt must be > 0, got {self.dt}", field="dt")
        if self.t_max < 0:
            raise ConfigError(f"t_max must be >= 0, got {self.t_max}", field="t_max")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ConfigError(
                f"record_stride must be an integer >= 1, got {self.record_stride}",
                field="record_stride",
            )
        object.__setattr__(self, "record_stride", int(self.record_stride))

    @property
    def n_steps(self) -> int:
        """Number of RK4 steps to reach t_max (t_max rounded to a multiple of dt)."""
        return int(round(self.t_max / self.dt))


@dataclass(frozen=True, slots=True)
class SimulationConfig:
    """
    Everything a run needs.

    Attributes:
        system: Qubit frequencies.
        baths: One bath per qubit, same order as ``system.omegas``.
        initial_state: Initial system state.
        integrator: RK4 schedule.
        p_weight: Share of the commutator assigned to the Markovian group of
            partial superoperators (the rest goes to the spin-star group).
        eps_log: Eigenvalue floor for logarithms.
        tol_spohn: Relative tolerance of the modified Spohn check.
        observers: Observer on/off overrides by name.
    """

    system: SystemSpec
    baths: tuple[BathSpec, ...]
    initial_state: InitialState = field(default_factory=GHZ)
    integrator: IntegratorSettings = field(default_factory=IntegratorSettings)
    p_weight: float = 0.5
    eps_log: float = 1e-12
    tol_spohn: float = 1e-6
    observers: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "baths", tuple(self.baths))
        if len(self.baths) != self.system.n_qubits:
            raise ConfigError(
                f"{len(self.baths)} baths given for {self.system.n_qubits} qubits",
                field="bath",
            )
        if not 0.0 <= self.p_weight <= 1.0:
            raise ConfigError(f"p_weight must lie in [0, 1], got {self.p_weight}", field="p_weight")
        if not 0.0 < self.eps_log < 1.0:
            raise ConfigError(f"eps_log must lie in (0, 1), got {self.eps_log}", field="eps_log")
        if not self.tol_spohn > 0:
            raise ConfigError(f"tol_spohn must be > 0, got {self.tol_spohn}", field="tol_spohn")
        state = self.initial_state
        if isinstance(state, ProductBasis) and len(state.bits) != self.system.n_qubits:
            raise ConfigError(
                f"initial bits {state.bits!r} do not match {self.system.n_qubits} qubits",
                field="initial_state",
            )
        if isinstance(state, Custom) and len(state.amplitudes) != 2**self.system.n_qubits:
            raise ConfigError(
                f"custom state needs {2 ** self.system.n_qubits} amplitudes, "
                f"got {len(state.amplitudes)}",
                field="initial_state",
            )

    @property
    def markovian_qubits(self) -> tuple[int, ...]:
        """0-based indices of qubits attached to Markovian baths."""
        return tuple(j for j, b in enumerate(self.baths) if isinstance(b, MarkovianBath))

    @property
    def spin_star_qubits(self) -> tuple[int, ...]:
        """0-based indices of qubits attached to spin-star baths."""
        return tuple(j for j, b in enumerate(self.baths) if isinstance(b, SpinStarBath))

    @property
    def temperatures(self) -> tuple[float, ...]:
        return tuple(b.T for b in self.baths)
