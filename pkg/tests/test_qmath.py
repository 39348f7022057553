# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Tests for the qmath package."""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg
import scipy.stats

from genro_qthermo.exceptions import ContractViolation, DimensionError, DomainError
from genro_qthermo.qmath import (
    QOperator,
    assert_density_matrix,
    density_diagnostics,
    embed,
    floored_log,
    herm_eig,
    identity,
    kron,
    mat_func_hermitian,
    partial_trace,
    relative_entropy,
    trace_distance,
    von_neumann_entropy,
)

SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)


def random_density(side: int, seed: int, dims: tuple[int, ...] | None = None) -> QOperator:
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
    rho = g @ g.conj().T
    return QOperator(rho / np.trace(rho), dims)


def random_hermitian(side: int, seed: int) -> QOperator:
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(side, side)) + 1j * rng.normal(size=(side, side))
    return QOperator(0.5 * (g + g.conj().T))


# =============================================================================
# QOperator
# =============================================================================


class TestQOperator:
    """Tests for QOperator construction and arithmetic."""

    def test_default_dims(self) -> None:
        """Without dims the operator is a single factor."""
        op = QOperator(np.eye(4))
        assert op.dims == (4,)
        assert op.side == 4
        assert op.data.dtype == np.complex128

    def test_non_square_rejected(self) -> None:
        """Rectangular matrices are not operators."""
        with pytest.raises(DimensionError, match="square"):
            QOperator(np.zeros((2, 3)))

    def test_dims_product_must_match(self) -> None:
        """Product of dims must equal the side."""
        with pytest.raises(DimensionError, match="product"):
            QOperator(np.eye(4), (2, 3))

    def test_dag_and_trace(self) -> None:
        """dag conjugates and transposes; trace sums the diagonal."""
        op = QOperator([[1, 2j], [3, 4]])
        assert np.array_equal(op.dag().data, np.array([[1, 3], [-2j, 4]]))
        assert op.trace() == 5

    def test_hermitian_and_symmetrized(self) -> None:
        """symmetrized returns the Hermitian part."""
        op = QOperator([[1, 1j], [0, 2]])
        assert not op.is_hermitian()
        sym = op.symmetrized()
        assert sym.is_hermitian()
        assert sym.data[0, 1] == pytest.approx(0.5j)

    def test_arithmetic_keeps_dims(self) -> None:
        """Sums, products and scalar products keep the layout."""
        a = QOperator(np.eye(4), (2, 2))
        b = QOperator(2 * np.eye(4), (2, 2))
        assert (a + b).dims == (2, 2)
        assert (b - a) == a
        assert (-a).trace() == -4
        assert (3 * a).trace() == 12
        assert (a @ b).trace() == 8

    def test_arithmetic_dims_mismatch(self) -> None:
        """Operators on different layouts do not combine."""
        with pytest.raises(DimensionError, match="mismatch"):
            QOperator(np.eye(4), (2, 2)) + QOperator(np.eye(4))

    def test_repr(self) -> None:
        """repr shows dims."""
        assert repr(QOperator(np.eye(4), (2, 2))) == "QOperator(dims=(2, 2), side=4)"


# =============================================================================
# Tensor products
# =============================================================================


class TestKron:
    """Tests for kron, identity and embed."""

    def test_identity_case(self) -> None:
        """kron(I2, I2) is I4 with two factors."""
        result = kron(identity([2]), identity([2]))
        assert result == identity([2, 2])

    def test_sigma_z_left(self) -> None:
        """kron(sz, I2) is diag(1, 1, -1, -1)."""
        result = kron(QOperator(SZ), identity([2]))
        assert np.array_equal(result.data, np.diag([1, 1, -1, -1]).astype(complex))

    def test_index_formula(self) -> None:
        """Entry (2i+k, 2j+l) equals A[i,j] B[k,l]."""
        rng = np.random.default_rng(7)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        result = kron(QOperator(a), QOperator(b)).data
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        assert result[2 * i + k, 2 * j + l] == pytest.approx(a[i, j] * b[k, l])

    def test_three_factors(self) -> None:
        """Extra factors are appended left to right."""
        result = kron(identity([2]), identity([3]), identity([2]))
        assert result.dims == (2, 3, 2)

    def test_associative(self) -> None:
        """kron(kron(a, b), c) equals kron(a, kron(b, c)) entry by entry."""
        a, b, c = random_density(2, 41), random_density(3, 42), random_density(2, 43)
        left = kron(kron(a, b), c)
        right = kron(a, kron(b, c))
        assert left.dims == right.dims == (2, 3, 2)
        assert np.max(np.abs(left.data - right.data)) <= 1e-15

    def test_embed_matches_kron(self) -> None:
        """embed places the operator on one factor."""
        assert embed(SZ, 1, (2, 2)) == kron(identity([2]), QOperator(SZ))
        assert embed(SZ, 0, (2, 3)) == kron(QOperator(SZ), identity([3]))

    def test_embed_errors(self) -> None:
        """Out-of-range factors and wrong shapes are rejected."""
        with pytest.raises(DimensionError, match="out of range"):
            embed(SZ, 2, (2, 2))
        with pytest.raises(DimensionError, match="does not fit"):
            embed(SZ, 1, (2, 3))


class TestPartialTrace:
    """Tests for partial_trace."""

    def test_product_state(self) -> None:
        """tr_B(rho_A x rho_B) is rho_A."""
        rho_a = random_density(2, 1)
        rho_b = random_density(3, 2)
        reduced = partial_trace(kron(rho_a, rho_b), [0])
        assert reduced.dims == (2,)
        assert np.allclose(reduced.data, rho_a.data, atol=1e-14)
        assert np.allclose(partial_trace(kron(rho_a, rho_b), [1]).data, rho_b.data, atol=1e-14)

    def test_bell_state(self) -> None:
        """Either marginal of a Bell state is maximally mixed."""
        psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
        bell = QOperator(np.outer(psi, psi), (2, 2))
        for keep in ([0], [1]):
            assert np.allclose(partial_trace(bell, keep).data, np.eye(2) / 2)

    def test_index_sum_oracle(self) -> None:
        """Random 2x3 state matches an explicit index sum."""
        rho = random_density(6, 3, (2, 3))
        tensor = rho.data.reshape(2, 3, 2, 3)
        expected_a = np.zeros((2, 2), dtype=complex)
        expected_b = np.zeros((3, 3), dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(3):
                    expected_a[i, j] += tensor[i, k, j, k]
        for k in range(3):
            for l in range(3):
                for i in range(2):
                    expected_b[k, l] += tensor[i, k, i, l]
        assert np.allclose(partial_trace(rho, [0]).data, expected_a, atol=1e-12)
        assert np.allclose(partial_trace(rho, [1]).data, expected_b, atol=1e-12)

    def test_keep_order_irrelevant(self) -> None:
        """Factor order follows the original layout."""
        rho = random_density(12, 4, (2, 3, 2))
        assert partial_trace(rho, [2, 0]) == partial_trace(rho, [0, 2])
        assert partial_trace(rho, [0, 2]).dims == (2, 2)

    def test_composition(self) -> None:
        """Tracing out factors in two steps equals tracing them out at once."""
        rho = random_density(12, 44, (2, 3, 2))
        direct = partial_trace(rho, [1])
        assert np.allclose(partial_trace(partial_trace(rho, [0, 1]), [1]).data, direct.data, atol=1e-14)
        assert np.allclose(partial_trace(partial_trace(rho, [1, 2]), [0]).data, direct.data, atol=1e-14)
        assert np.allclose(
            partial_trace(partial_trace(rho, [0, 2]), [1]).data, partial_trace(rho, [2]).data, atol=1e-14
        )

    def test_keep_all_copies(self) -> None:
        """Keeping every factor returns an equal copy."""
        rho = random_density(4, 5, (2, 2))
        result = partial_trace(rho, [0, 1])
        assert result == rho
        assert result.data is not rho.data

    def test_errors(self) -> None:
        """Invalid requests raise DimensionError."""
        with pytest.raises(DimensionError, match="at least two"):
            partial_trace(random_density(2, 6), [0])
        with pytest.raises(DimensionError, match="at least one"):
            partial_trace(random_density(4, 6, (2, 2)), [])
        with pytest.raises(DimensionError, match="invalid"):
            partial_trace(random_density(4, 6, (2, 2)), [2])


# =============================================================================
# Spectral tools
# =============================================================================


class TestSpectral:
    """Tests for herm_eig, mat_func_hermitian and floored_log."""

    def test_pauli_spectra(self) -> None:
        """sz and sx both have eigenvalues (-1, 1)."""
        values, _ = herm_eig(QOperator(SZ))
        assert np.allclose(values, [-1, 1])
        values, vectors = herm_eig(QOperator(SX))
        assert np.allclose(values, [-1, 1])
        minus = np.array([1, -1]) / math.sqrt(2)
        assert abs(np.vdot(minus, vectors.data[:, 0])) == pytest.approx(1.0)

    def test_reconstruction(self) -> None:
        """V diag(lambda) V^dagger reproduces a random Hermitian matrix."""
        h = random_hermitian(8, 11)
        values, vectors = herm_eig(h)
        v = vectors.data
        assert np.max(np.abs((v * values) @ v.conj().T - h.data)) <= 1e-10
        assert np.all(np.diff(values) >= 0)

    def test_non_hermitian_rejected(self) -> None:
        """herm_eig refuses non-Hermitian input."""
        with pytest.raises(ContractViolation, match="not Hermitian"):
            herm_eig(QOperator([[0, 1], [0, 0]]))

    def test_exp_and_log(self) -> None:
        """exp(diag(0, ln 2)) = diag(1, 2); log(I/2) = -ln 2 I."""
        result = mat_func_hermitian(QOperator(np.diag([0.0, math.log(2)])), np.exp)
        assert np.allclose(result.data, np.diag([1.0, 2.0]))
        result = mat_func_hermitian(QOperator(np.eye(2) / 2), np.log)
        assert np.allclose(result.data, -math.log(2) * np.eye(2))

    def test_exp_log_round_trip(self) -> None:
        """exp(log rho) = rho for a full-rank state."""
        rho = random_density(4, 12)
        back = mat_func_hermitian(mat_func_hermitian(rho, np.log), np.exp)
        assert np.max(np.abs(back.data - rho.data)) <= 1e-10

    def test_identity_function(self) -> None:
        """f(x) = x gives back the operator."""
        h = random_hermitian(4, 45)
        result = mat_func_hermitian(h, lambda v: v)
        assert np.max(np.abs(result.data - h.data)) <= 1e-12

    def test_scalar_function(self) -> None:
        """Scalar-only functions are applied eigenvalue by eigenvalue."""
        result = mat_func_hermitian(QOperator(np.diag([1.0, 4.0])), math.sqrt)
        assert np.allclose(result.data, np.diag([1.0, 2.0]))
        result = mat_func_hermitian(QOperator(np.eye(2) / 2), math.log)
        assert np.allclose(result.data, -math.log(2) * np.eye(2))

    def test_scalar_function_domain_error(self) -> None:
        """math.log on a singular spectrum is a DomainError, not a TypeError."""
        with pytest.raises(DomainError):
            mat_func_hermitian(QOperator(np.diag([1.0, 0.0])), math.log)
        with pytest.raises(DomainError):
            mat_func_hermitian(QOperator(np.diag([1.0, -1.0])), math.sqrt)

    def test_domain_error(self) -> None:
        """log of a singular matrix is undefined."""
        with pytest.raises(DomainError):
            mat_func_hermitian(QOperator(np.diag([1.0, 0.0])), np.log)

    def test_wrong_shape_is_domain_error(self) -> None:
        """f must map the spectrum to an array of equal length."""
        with pytest.raises(DomainError):
            mat_func_hermitian(QOperator(np.eye(2)), lambda v: v[:1])

    def test_floored_log_pure_state(self) -> None:
        """Zero eigenvalues are clamped to eps_log."""
        result = floored_log(QOperator(np.diag([1.0, 0.0])), 1e-12)
        assert np.all(np.isfinite(result.data))
        assert result.data[1, 1].real == pytest.approx(math.log(1e-12 / (1 + 1e-12)), abs=1e-9)
        assert abs(result.data[0, 0]) < 1e-11

    def test_floored_log_commutes(self) -> None:
        """The floored log commutes with rho."""
        rho = random_density(4, 13)
        log_rho = floored_log(rho).data
        assert np.max(np.abs(log_rho @ rho.data - rho.data @ log_rho)) <= 1e-12


# =============================================================================
# Entropies
# =============================================================================


class TestEntropy:
    """Tests for von Neumann entropy, relative entropy and trace distance."""

    def test_pure_state(self) -> None:
        """Pure states have zero entropy."""
        psi = np.array([1, 1j]) / math.sqrt(2)
        assert von_neumann_entropy(QOperator(np.outer(psi, psi.conj()))) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self) -> None:
        """I/2 has entropy ln 2."""
        assert von_neumann_entropy(QOperator(np.eye(2) / 2)) == pytest.approx(math.log(2))

    def test_diagonal(self) -> None:
        """Entropy of diag(0.25, 0.75)."""
        expected = -0.25 * math.log(0.25) - 0.75 * math.log(0.75)
        assert von_neumann_entropy(QOperator(np.diag([0.25, 0.75]))) == pytest.approx(expected)

    def test_rounding_negative_eigenvalue(self) -> None:
        """Tiny negative eigenvalues are clamped."""
        assert von_neumann_entropy(QOperator(np.diag([1.0 + 1e-13, -1e-13]))) >= 0.0

    def test_unitary_invariance(self) -> None:
        """S(U rho U^dagger) = S(rho)."""
        rho = random_density(4, 46)
        u = scipy.stats.unitary_group.rvs(4, random_state=47)
        rotated = QOperator(u @ rho.data @ u.conj().T)
        assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-12)

    def test_relative_entropy_self(self) -> None:
        """S(rho || rho) = 0."""
        rho = random_density(4, 21)
        assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_relative_entropy_commuting(self) -> None:
        """S(I/2 || diag(p, 1-p)) = -ln 2 - ln(p(1-p)) / 2."""
        p = 0.2
        expected = -math.log(2) - 0.5 * math.log(p * (1 - p))
        result = relative_entropy(QOperator(np.eye(2) / 2), QOperator(np.diag([p, 1 - p])))
        assert result == pytest.approx(expected, rel=1e-12)

    def test_relative_entropy_non_commuting(self) -> None:
        """Matches tr(rho (ln rho - ln sigma)) from independent decompositions."""
        rho = random_density(2, 22)
        sigma = random_density(2, 23)
        expected = np.trace(rho.data @ (scipy.linalg.logm(rho.data) - scipy.linalg.logm(sigma.data)))
        assert relative_entropy(rho, sigma) == pytest.approx(expected.real, abs=1e-10)

    def test_relative_entropy_support(self) -> None:
        """Weight outside the support of sigma gives infinity."""
        sigma = QOperator(np.diag([1.0, 0.0]))
        assert relative_entropy(QOperator(np.eye(2) / 2), sigma) == math.inf
        assert relative_entropy(sigma, sigma) == pytest.approx(0.0, abs=1e-12)

    def test_trace_distance(self) -> None:
        """Orthogonal pure states are at distance 1."""
        assert trace_distance(QOperator(np.diag([1.0, 0.0])), QOperator(np.diag([0.0, 1.0]))) == pytest.approx(1.0)


class TestDensityChecks:
    """Tests for density_diagnostics and assert_density_matrix."""

    def test_diagnostics(self) -> None:
        """Returns trace error, Hermiticity error and minimum eigenvalue."""
        trace_err, herm_err, min_eig = density_diagnostics(QOperator(np.diag([0.75, 0.25])))
        assert trace_err == pytest.approx(0.0)
        assert herm_err == 0.0
        assert min_eig == pytest.approx(0.25)

    def test_valid_state_passes(self) -> None:
        """A random density matrix passes."""
        assert_density_matrix(random_density(4, 31))

    @pytest.mark.parametrize(
        "matrix, message",
        [
            (np.diag([1.0, 1.0]), "trace"),
            (np.array([[0.5, 0.1], [0.0, 0.5]]), "Hermitian"),
            (np.diag([1.5, -0.5]), "negative"),
        ],
    )
    def test_invalid_states(self, matrix: np.ndarray, message: str) -> None:
        """Each broken property raises ContractViolation."""
        with pytest.raises(ContractViolation, match=message):
            assert_density_matrix(QOperator(matrix))
