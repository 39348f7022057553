# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Tests for configuration types and operator builders."""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg

from genro_qthermo.exceptions import ConfigError
from genro_qthermo.model import (
    GHZ,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    Custom,
    IntegratorSettings,
    JointLayout,
    MarkovianBath,
    ProductBasis,
    SimulationConfig,
    SpinStarBath,
    SystemSpec,
    build_spin_star_bath,
    build_system_hamiltonian,
    build_xy_interaction,
    gibbs_state,
    initial_joint_state,
    initial_system_state,
    lift_system_operator,
)
from genro_qthermo.qmath import QOperator, embed, identity, kron, partial_trace, von_neumann_entropy


def four_qubit_config(kinds: str = "MMMN", **kwargs: object) -> SimulationConfig:
    temperatures = (127.33, 105.57, 95.8, 68.6)
    baths = tuple(
        MarkovianBath(T=T, kappa=1e-3) if kind == "M" else SpinStarBath(T=T, nu=1.0, alpha=5e-3)
        for kind, T in zip(kinds, temperatures)
    )
    return SimulationConfig(system=SystemSpec((50.0, 55.0, 60.0, 65.0)), baths=baths, **kwargs)  # type: ignore[arg-type]


# =============================================================================
# Value types
# =============================================================================


class TestSpecs:
    """Validation of the configuration dataclasses."""

    def test_system_spec(self) -> None:
        """Frequencies are stored as floats."""
        spec = SystemSpec((50, 55))
        assert spec.omegas == (50.0, 55.0)
        assert spec.n_qubits == 2

    @pytest.mark.parametrize("omegas", [(), (50.0, 0.0), (-1.0,)])
    def test_system_spec_invalid(self, omegas: tuple[float, ...]) -> None:
        """Empty or non-positive frequencies are rejected."""
        with pytest.raises(ConfigError) as exc_info:
            SystemSpec(omegas)
        assert exc_info.value.field == "omegas"

    def test_markovian_bath(self) -> None:
        """Temperature must be positive and kappa non-negative."""
        assert MarkovianBath(T=1.0, kappa=0.0).kind == "markovian"
        with pytest.raises(ConfigError) as exc_info:
            MarkovianBath(T=0.0, kappa=1e-3)
        assert exc_info.value.field == "T"
        with pytest.raises(ConfigError) as exc_info:
            MarkovianBath(T=1.0, kappa=-1.0)
        assert exc_info.value.field == "kappa"

    def test_spin_star_bath(self) -> None:
        """n_spins defaults to 1."""
        bath = SpinStarBath(T=68.6, nu=1.0, alpha=5e-3)
        assert bath.n_spins == 1
        assert bath.kind == "spin_star"

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            ({"nu": 0.0}, "nu"),
            ({"alpha": -1.0}, "alpha"),
            ({"n_spins": 0}, "n_spins"),
            ({"n_spins": 1.5}, "n_spins"),
        ],
    )
    def test_spin_star_invalid(self, kwargs: dict[str, float], field: str) -> None:
        """Each invalid parameter names its field."""
        params = {"T": 1.0, "nu": 1.0, "alpha": 0.1, **kwargs}
        with pytest.raises(ConfigError) as exc_info:
            SpinStarBath(**params)  # type: ignore[arg-type]
        assert exc_info.value.field == field

    def test_product_basis_invalid(self) -> None:
        """Bits must be a 0/1 string."""
        with pytest.raises(ConfigError):
            ProductBasis("012")
        with pytest.raises(ConfigError):
            ProductBasis("")

    def test_integrator_defaults(self) -> None:
        """Default schedule: dt 2e-4 up to t = 50, every 50 steps."""
        settings = IntegratorSettings()
        assert settings.n_steps == 250_000
        assert settings.record_stride == 50
        assert IntegratorSettings(dt=0.1, t_max=0.0).n_steps == 0

    @pytest.mark.parametrize(
        "kwargs, field",
        [({"dt": 0.0}, "dt"), ({"t_max": -1.0}, "t_max"), ({"record_stride": 0}, "record_stride")],
    )
    def test_integrator_invalid(self, kwargs: dict[str, float], field: str) -> None:
        """Invalid schedule values are rejected."""
        with pytest.raises(ConfigError) as exc_info:
            IntegratorSettings(**kwargs)  # type: ignore[arg-type]
        assert exc_info.value.field == field


class TestSimulationConfig:
    """Cross-field validation of SimulationConfig."""

    def test_defaults(self) -> None:
        """GHZ start, p = 0.5, eps_log = 1e-12."""
        config = four_qubit_config()
        assert config.initial_state == GHZ()
        assert config.p_weight == 0.5
        assert config.eps_log == 1e-12
        assert config.markovian_qubits == (0, 1, 2)
        assert config.spin_star_qubits == (3,)
        assert config.temperatures == (127.33, 105.57, 95.8, 68.6)

    def test_bath_count_mismatch(self) -> None:
        """Exactly one bath per qubit."""
        with pytest.raises(ConfigError, match="3 baths given for 4 qubits") as exc_info:
            SimulationConfig(
                system=SystemSpec((50.0, 55.0, 60.0, 65.0)),
                baths=tuple(MarkovianBath(T=1.0, kappa=1e-3) for _ in range(3)),
            )
        assert exc_info.value.field == "bath"

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            ({"p_weight": 1.5}, "p_weight"),
            ({"eps_log": 0.0}, "eps_log"),
            ({"tol_spohn": 0.0}, "tol_spohn"),
            ({"initial_state": ProductBasis("01")}, "initial_state"),
            ({"initial_state": Custom((1, 0))}, "initial_state"),
        ],
    )
    def test_invalid_fields(self, kwargs: dict[str, object], field: str) -> None:
        """Each invalid value names its field."""
        with pytest.raises(ConfigError) as exc_info:
            four_qubit_config(**kwargs)
        assert exc_info.value.field == field


# =============================================================================
# Builders
# =============================================================================


class TestHamiltonians:
    """Tests for system, bath and interaction Hamiltonians."""

    def test_single_qubit(self) -> None:
        """omega = 2 gives diag(1, -1)."""
        h = build_system_hamiltonian(SystemSpec((2.0,)))
        assert np.allclose(h.data, np.diag([1.0, -1.0]))

    def test_two_qubits(self) -> None:
        """Diagonal entries are +-25 +-27.5."""
        h = build_system_hamiltonian(SystemSpec((50.0, 55.0)))
        assert h.dims == (2, 2)
        assert np.allclose(np.diag(h.data).real, [52.5, -2.5, 2.5, -52.5])
        assert np.count_nonzero(h.data - np.diag(np.diag(h.data))) == 0

    def test_four_qubits_max_energy(self) -> None:
        """Top level of the four-qubit system is 115."""
        h = build_system_hamiltonian(SystemSpec((50.0, 55.0, 60.0, 65.0)))
        assert scipy.linalg.eigvalsh(h.data)[-1] == pytest.approx(115.0)

    def test_spin_star_single_spin(self) -> None:
        """N = 1: H_B = nu diag(1, 0)."""
        ops = build_spin_star_bath(nu=2.0, n_spins=1)
        assert np.allclose(ops.h_b.data, np.diag([2.0, 0.0]))
        assert ops.h_b.dims == (2,)

    def test_spin_star_two_spins(self) -> None:
        """N = 2: spectrum {0, 0, 2 nu, 2 nu} on one factor of dim 4."""
        ops = build_spin_star_bath(nu=1.5, n_spins=2)
        assert ops.h_b.dims == (4,)
        assert np.allclose(scipy.linalg.eigvalsh(ops.h_b.data), [0.0, 0.0, 3.0, 3.0])
        assert ops.j_minus == ops.j_plus.dag()

    @pytest.mark.parametrize("n_spins", [1, 2, 3])
    def test_spin_star_conserves_jz(self, n_spins: int) -> None:
        """[J+J-, Jz] = 0."""
        ops = build_spin_star_bath(nu=1.0, n_spins=n_spins)
        dims = (2,) * n_spins
        jz = sum(embed(SIGMA_Z, s, dims).data for s in range(n_spins))
        h = ops.h_b.data
        assert np.max(np.abs(h @ jz - jz @ h)) == pytest.approx(0.0, abs=1e-12)

    def test_spin_star_invalid(self) -> None:
        """At least one spin."""
        with pytest.raises(ConfigError):
            build_spin_star_bath(nu=1.0, n_spins=0)

    def test_xy_interaction_swap(self) -> None:
        """N = 1, alpha = 1: H_I swaps |0>|1> and |1>|0>."""
        layout = JointLayout(1, (0,), (2,))
        h_i = build_xy_interaction(0, 1.0, build_spin_star_bath(1.0, 1), layout)
        expected = np.zeros((4, 4))
        expected[1, 2] = expected[2, 1] = 1.0
        assert np.allclose(h_i.data, expected)
        assert h_i.dims == (2, 2)

    def test_xy_interaction_properties(self) -> None:
        """Hermitian, vanishes at alpha = 0, conserves excitations for N = 1."""
        layout = JointLayout(2, (1,), (2,))
        ops = build_spin_star_bath(1.0, 1)
        h_i = build_xy_interaction(1, 0.3, ops, layout)
        assert h_i.is_hermitian(tol=0.0)
        assert np.count_nonzero(build_xy_interaction(1, 0.0, ops, layout).data) == 0
        excitations = embed(SIGMA_Z, 1, layout.dims) + embed(SIGMA_Z, 2, layout.dims)
        commutator = h_i @ excitations - excitations @ h_i
        assert np.max(np.abs(commutator.data)) == pytest.approx(0.0, abs=1e-15)

    def test_xy_interaction_wrong_qubit(self) -> None:
        """A qubit without spin-star bath has no interaction."""
        layout = JointLayout(2, (1,), (2,))
        with pytest.raises(ConfigError, match="qubit 1 has no spin-star bath"):
            build_xy_interaction(0, 0.3, build_spin_star_bath(1.0, 1), layout)

    def test_xy_interaction_size_mismatch(self) -> None:
        """Bath operators must fit the bath factor."""
        layout = JointLayout(1, (0,), (2,))
        with pytest.raises(ConfigError):
            build_xy_interaction(0, 0.3, build_spin_star_bath(1.0, 2), layout)


class TestLayout:
    """Tests for JointLayout."""

    def test_from_config(self) -> None:
        """Baths follow the system qubits in owner order."""
        config = four_qubit_config("MNMN")
        layout = JointLayout.from_config(config)
        assert layout.owners == (1, 3)
        assert layout.dims == (2, 2, 2, 2, 2, 2)
        assert layout.system_factors == (0, 1, 2, 3)
        assert layout.bath_factors == (4, 5)
        assert layout.bath_factor(3) == 5

    def test_multi_spin_factor(self) -> None:
        """An N-spin bath is one factor of dimension 2^N."""
        config = SimulationConfig(
            system=SystemSpec((1.0,)), baths=(SpinStarBath(T=1.0, nu=1.0, alpha=0.1, n_spins=3),)
        )
        assert JointLayout.from_config(config).dims == (2, 8)

    def test_all_markovian(self) -> None:
        """No spin stars, no bath factors."""
        layout = JointLayout.from_config(four_qubit_config("MMMM"))
        assert layout.dims == (2, 2, 2, 2)
        assert layout.bath_factors == ()


class TestStates:
    """Tests for Gibbs and initial states."""

    def test_gibbs_high_temperature(self) -> None:
        """T -> infinity gives I / d."""
        h = build_system_hamiltonian(SystemSpec((50.0, 55.0)))
        assert np.allclose(gibbs_state(h, 1e12).data, np.eye(4) / 4, atol=1e-9)

    def test_gibbs_qubit_population(self) -> None:
        """Excited population 1 / (1 + e^{omega/T})."""
        h = build_system_hamiltonian(SystemSpec((50.0,)))
        rho = gibbs_state(h, 127.33)
        assert rho.data[0, 0].real == pytest.approx(1.0 / (1.0 + math.exp(50.0 / 127.33)), rel=1e-12)
        assert rho.trace() == pytest.approx(1.0)

    def test_gibbs_low_temperature(self) -> None:
        """T -> 0 gives the ground-state projector."""
        h = build_system_hamiltonian(SystemSpec((50.0,)))
        assert np.allclose(gibbs_state(h, 50e-6).data, np.diag([0.0, 1.0]))

    def test_gibbs_invalid_temperature(self) -> None:
        """Non-positive temperatures are rejected."""
        with pytest.raises(ConfigError):
            gibbs_state(QOperator(np.eye(2)), 0.0)

    def test_ghz(self) -> None:
        """GHZ is pure with coherence between |0..0> and |1..1>."""
        config = four_qubit_config("MMMM")
        rho = initial_system_state(config)
        assert rho.dims == (2, 2, 2, 2)
        assert rho.data[0, 0] == pytest.approx(0.5)
        assert rho.data[15, 15] == pytest.approx(0.5)
        assert rho.data[0, 15] == pytest.approx(0.5)
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)

    def test_product_basis(self) -> None:
        """|0000> is diagonal, bits index the basis."""
        rho = initial_system_state(four_qubit_config("MMMM", initial_state=ProductBasis("0000")))
        assert rho.data[0, 0] == 1.0
        assert np.count_nonzero(rho.data) == 1
        rho = initial_system_state(four_qubit_config("MMMM", initial_state=ProductBasis("0101")))
        assert rho.data[5, 5] == 1.0

    def test_custom_state_normalized(self) -> None:
        """Amplitudes are normalized."""
        config = SimulationConfig(
            system=SystemSpec((1.0,)),
            baths=(MarkovianBath(T=1.0, kappa=0.1),),
            initial_state=Custom((1, 1j)),
        )
        rho = initial_system_state(config)
        assert rho.data[0, 1] == pytest.approx(-0.5j)
        assert rho.trace() == pytest.approx(1.0)

    def test_custom_state_zero_norm(self) -> None:
        """A zero vector is not a state."""
        config = SimulationConfig(
            system=SystemSpec((1.0,)),
            baths=(MarkovianBath(T=1.0, kappa=0.1),),
            initial_state=Custom((0, 0)),
        )
        with pytest.raises(ConfigError, match="zero norm"):
            initial_system_state(config)

    def test_initial_joint_state(self) -> None:
        """System state times thermal spin baths; bath marginal is Gibbs."""
        config = four_qubit_config("MMMN")
        state = initial_joint_state(config)
        assert state.t == 0.0
        assert state.rho.dims == (2, 2, 2, 2, 2)
        assert state.rho.trace() == pytest.approx(1.0)
        bath = partial_trace(state.rho, [4])
        expected = gibbs_state(build_spin_star_bath(1.0, 1).h_b, 68.6)
        assert np.allclose(bath.data, expected.data, atol=1e-14)

    def test_lift_system_operator(self) -> None:
        """op x I on bath factors; unchanged without baths."""
        h = build_system_hamiltonian(SystemSpec((1.0,)))
        assert lift_system_operator(h, JointLayout(1)) is h
        lifted = lift_system_operator(h, JointLayout(1, (0,), (4,)))
        assert lifted == kron(h, identity([4]))

    def test_sigma_conventions(self) -> None:
        """sigma+ raises |1> (ground) to |0> (excited)."""
        ground = np.array([0, 1])
        assert np.array_equal(SIGMA_PLUS @ ground, [1, 0])
        assert np.array_equal(SIGMA_MINUS @ np.array([1, 0]), ground)
