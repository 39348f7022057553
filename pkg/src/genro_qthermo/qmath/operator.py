# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""QOperator - dense complex matrix tagged with its tensor-factor layout.

Definition::

    class QOperator:
        __slots__ = ("data", "dims")

        def __init__(self, data: ArrayLike, dims: Sequence[int] | None = None)
        def dag(self) -> QOperator
        def trace(self) -> complex
        def is_hermitian(self, tol: float = 1e-10) -> bool
        def symmetrized(self) -> QOperator
        # arithmetic: +, -, unary -, scalar *, @ (dims must match)

    def kron(a: QOperator, b: QOperator, *more: QOperator) -> QOperator
    def partial_trace(rho: QOperator, keep: Iterable[int]) -> QOperator
    def embed(op: ArrayLike, factor: int, dims: Sequence[int]) -> QOperator
    def identity(dims: Sequence[int]) -> QOperator

Layout convention
=================
Factors are ordered left to right as in the Kronecker product: the left
factor indexes blocks (row-major). Throughout the package the joint layout is
system qubits 1..K first, then spin-star baths in ascending owner-qubit order.
"""

from __future__ import annotations

import math
import string
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
import numpy.typing as npt

from ..exceptions import DimensionError
from ..types import ComplexMatrix

__all__ = ["QOperator", "kron", "partial_trace", "embed", "identity"]

_LETTERS = string.ascii_letters


class QOperator:
    """
    Dense square complex matrix with subsystem dimensions.

    Attributes:
        data: The (d, d) complex128 matrix.
        dims: Subsystem dimensions; their product equals d.

    Example:
        >>> sz = QOperator([[1, 0], [0, -1]])
        >>> kron(sz, identity([2])).dims
        (2, 2)
    """

    __slots__ = ("data", "dims")

    def __init__(self, data: npt.ArrayLike, dims: Sequence[int] | None = None) -> None:
        matrix = np.asarray(data, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"QOperator needs a square matrix, got shape {matrix.shape}")
        side = matrix.shape[0]
        layout = (side,) if dims is None else tuple(int(d) for d in dims)
        if not layout or any(d < 1 for d in layout):
            raise DimensionError(f"dims must be positive integers, got {layout}")
        if math.prod(layout) != side:
            raise DimensionError(f"product of dims {layout} does not match side {side}")
        self.data: ComplexMatrix = matrix
        self.dims: tuple[int, ...] = layout

    @property
    def side(self) -> int:
        """Matrix side length."""
        return int(self.data.shape[0])

    def dag(self) -> QOperator:
        """Hermitian conjugate."""
        return QOperator(self.data.conj().T, self.dims)

    def trace(self) -> complex:
        """Matrix trace."""
        return complex(np.trace(self.data))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        """True if max |A - A^dagger| <= tol."""
        return bool(np.max(np.abs(self.data - self.data.conj().T), initial=0.0) <= tol)

    def symmetrized(self) -> QOperator:
        """Hermitian part (A + A^dagger) / 2."""
        return QOperator(0.5 * (self.data + self.data.conj().T), self.dims)

    def _check_layout(self, other: QOperator) -> None:
        if self.dims != other.dims:
            raise DimensionError(f"dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: QOperator) -> QOperator:
        self._check_layout(other)
        return QOperator(self.data + other.data, self.dims)

    def __sub__(self, other: QOperator) -> QOperator:
        self._check_layout(other)
        return QOperator(self.data - other.data, self.dims)

    def __neg__(self) -> QOperator:
        return QOperator(-self.data, self.dims)

    def __mul__(self, scalar: complex) -> QOperator:
        return QOperator(self.data * scalar, self.dims)

    __rmul__ = __mul__

    def __matmul__(self, other: QOperator) -> QOperator:
        self._check_layout(other)
        return QOperator(self.data @ other.data, self.dims)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, QOperator):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.data, other.data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        """Return string representation."""
        return f"QOperator(dims={self.dims}, side={self.side})"


def kron(a: QOperator, b: QOperator, *more: QOperator) -> QOperator:
    """Kronecker product; dims are concatenated left to right."""
    result = QOperator(np.kron(a.data, b.data), a.dims + b.dims)
    for extra in more:
        result = QOperator(np.kron(result.data, extra.data), result.dims + extra.dims)
    return result


def identity(dims: Sequence[int]) -> QOperator:
    """Identity on the space with the given factor dims."""
    layout = tuple(dims)
    return QOperator(np.eye(math.prod(layout), dtype=np.complex128), layout)


def embed(op: npt.ArrayLike, factor: int, dims: Sequence[int]) -> QOperator:
    """
    Place a single-factor operator on ``factor`` with identities elsewhere.

    Args:
        op: Square matrix of side dims[factor].
        factor: 0-based factor index.
        dims: Full layout.

    Raises:
        DimensionError: If factor is out of range or op has the wrong size.
    """
    layout = tuple(int(d) for d in dims)
    if not 0 <= factor < len(layout):
        raise DimensionError(f"factor {factor} out of range for dims {layout}")
    local = np.asarray(op, dtype=np.complex128)
    if local.shape != (layout[factor], layout[factor]):
        raise DimensionError(
            f"operator of shape {local.shape} does not fit factor {factor} of dims {layout}"
        )
    left = math.prod(layout[:factor])
    right = math.prod(layout[factor + 1 :])
    data = np.kron(np.kron(np.eye(left), local), np.eye(right))
    return QOperator(data, layout)


def partial_trace(rho: QOperator, keep: Iterable[int]) -> QOperator:
    """
    Trace out every factor not listed in ``keep``.

    Factor order of the result follows the original layout, whatever the
    order of ``keep``.

    Args:
        rho: Operator with at least two factors.
        keep: Non-empty set of 0-based factor indices to keep.

    Raises:
        DimensionError: On single-factor input, empty keep or invalid index.
    """
    dims = rho.dims
    n = len(dims)
    if n < 2:
        raise DimensionError(f"partial trace needs at least two factors, got dims {dims}")
    kept = sorted(set(keep))
    if not kept:
        raise DimensionError("keep must name at least one factor")
    if kept[0] < 0 or kept[-1] >= n:
        raise DimensionError(f"factor indices {kept} invalid for dims {dims}")
    if 2 * n > len(_LETTERS):
        raise DimensionError(f"too many factors ({n}) for partial trace")
    if len(kept) == n:
        return QOperator(rho.data.copy(), dims)

    rows = _LETTERS[:n]
    cols = "".join(_LETTERS[n + i] if i in kept else rows[i] for i in range(n))
    out = "".join(rows[i] for i in kept) + "".join(cols[i] for i in kept)
    tensor = rho.data.reshape(dims + dims)
    reduced = np.einsum(f"{rows}{cols}->{out}", tensor)
    kept_dims = tuple(dims[i] for i in kept)
    side = math.prod(kept_dims)
    return QOperator(reduced.reshape(side, side), kept_dims)
