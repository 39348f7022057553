# Copyright 2025 Softwell S.r.l.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Exception classes for genro-qthermo.

This module provides typed exceptions for signaling invalid input, broken
numerical contracts and unstable integration. The CLI catches them at the
top level and converts them to an exit status and a one-line message.

Module Structure
----------------
All exceptions inherit from QThermoError so callers can catch the whole
family with one clause:

1. ConfigError - Invalid scenario, preset or run option
2. DimensionError - Tensor-factor layout mismatch (kron, partial trace)
3. ContractViolation - Precondition of a numerical operation not met
4. DomainError - Matrix function undefined at an eigenvalue
5. InstabilityError - Integrator drift beyond tolerance
6. NumericalConsistencyError - A quantity that must be real is not

Design Decisions
----------------
- Structured attributes: errors carry the data needed to act on them
  (field and line for configs, last good time for instabilities) instead of
  only a formatted message.
- No __slots__: exceptions are short-lived.

ConfigError
-----------
Attributes:
    field (str): Dotted field path, e.g. "bath.4.alpha" (default: "")
    source (str): Scenario file path or preset name (default: "")
    line (int | None): 1-based line in the scenario file, when known

Example:
    >>> raise ConfigError("3 baths for 4 qubits", field="bath", source="run.yaml", line=7)

InstabilityError
----------------
Attributes:
    t_last_good (float): Time of the last state that passed the drift check
    drift (float): Trace drift measured before renormalization
    dt (float): Step size in use

Example:
    >>> try:
    ...     evolve(config)
    ... except InstabilityError as e:
    ...     print(f"unstable after t={e.t_last_good}, try dt < {e.dt}")
"""

from __future__ import annotations

__all__ = [
    "QThermoError",
    "ConfigError",
    "DimensionError",
    "ContractViolation",
    "DomainError",
    "InstabilityError",
    "NumericalConsistencyError",
]


class QThermoError(Exception):
    """Base exception for genro-qthermo."""

    pass


class ConfigError(QThermoError):
    """
    Invalid configuration.

    Raised while parsing presets, scenario files and run options, and by
    builders that receive inconsistent specs (e.g. an XY coupling requested
    for a qubit whose bath is Markovian).

    Attributes:
        field: Dotted path of the offending field.
        source: Scenario file path or preset name.
        line: 1-based line number in the scenario file, if known.
    """

    def __init__(
        self,
        message: str,
        field: str = "",
        source: str = "",
        line: int | None = None,
    ) -> None:
        """
        Initialize config error.

        Args:
            message: Human-readable description.
            field: Dotted field path (default: "").
            source: File path or preset name (default: "").
            line: 1-based line number (default: None).
        """
        self.message = message
        self.field = field
        self.source = source
        self.line = line
        super().__init__(self._format())

    def _format(self) -> str:
        location = self.source
        if self.line is not None:
            location = f"{location}:{self.line}"
        prefix = f"{location}: " if location else ""
        where = f"[{self.field}] " if self.field else ""
        return f"{prefix}{where}{self.message}"

    def __repr__(self) -> str:
        """Return detailed string representation."""
        return (
            f"ConfigError(message={self.message!r}, field={self.field!r}, "
            f"source={self.source!r}, line={self.line})"
        )


class DimensionError(QThermoError):
    """Tensor-factor dims inconsistent with the matrix or the requested factors."""

    pass


class ContractViolation(QThermoError):
    """A documented precondition does not hold (non-Hermitian input, negative rate...)."""

    pass


class DomainError(QThermoError):
    """A scalar function is undefined at one of the eigenvalues it is applied to."""

    pass


class InstabilityError(QThermoError):
    """
    Integrator trace drift above tolerance.

    Attributes:
        t_last_good: Time of the last accepted state.
        drift: Pre-renormalization trace drift of the rejected step.
        dt: Step size in use.
    """

    def __init__(self, t_last_good: float, drift: float, dt: float) -> None:
        self.t_last_good = t_last_good
        self.drift = drift
        self.dt = dt
        super().__init__(
            f"trace drift {drift:.3e} after t={t_last_good:.6g} exceeds tolerance; "
            f"use a step smaller than dt={dt:g}"
        )

    def __repr__(self) -> str:
        """Return detailed string representation."""
        return (
            f"InstabilityError(t_last_good={self.t_last_good}, drift={self.drift}, "
            f"dt={self.dt})"
        )


class NumericalConsistencyError(QThermoError):
    """
    A quantity that is real by construction carries an imaginary residue.

    Attributes:
        quantity: Name of the quantity (e.g. "J_2", "witness").
        residue: Absolute imaginary part found.
    """

    def __init__(self, quantity: str, residue: float) -> None:
        self.quantity = quantity
        self.residue = residue
        super().__init__(f"{quantity} has imaginary residue {residue:.3e}")

    def __repr__(self) -> str:
        """Return detailed string representation."""
        return f"NumericalConsistencyError(quantity={self.quantity!r}, residue={self.residue})"
