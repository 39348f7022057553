# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Fixed-step RK4 propagation of the joint density matrix.

Every step is followed by re-symmetrization (rho + rho^dagger) / 2 and trace
renormalization. The trace drift removed by renormalization is kept on the
returned state and logged; a drift above ``max_drift`` means dt is too
large and raises InstabilityError.

Sample times are k * dt (no accumulated rounding); samples are taken when
k is a multiple of ``record_stride``, k = 0 included.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator

import numpy as np

from ..exceptions import ContractViolation, InstabilityError
from ..model import SimulationConfig, initial_joint_state
from ..qmath import QOperator
from ..types import Observer
from .generator import GeneratorBundle, JointState, assemble_generator

__all__ = ["MAX_TRACE_DRIFT", "DRIFT_WARNING", "rk4_step", "iter_trajectory", "evolve"]

logger = logging.getLogger("genro_qthermo.dynamics")

MAX_TRACE_DRIFT = 1e-6
DRIFT_WARNING = 1e-7


def rk4_step(
    state: JointState,
    dt: float,
    gen: GeneratorBundle,
    max_drift: float = MAX_TRACE_DRIFT,
) -> JointState:
    """
    One classical RK4 step of d rho / dt = gen(rho).

    Raises:
        ContractViolation: If dt <= 0.
        InstabilityError: If the trace drifts by more than ``max_drift`` or
            the state stops being finite.
    """
    if not dt > 0:
        raise ContractViolation(f"dt must be > 0, got {dt}")
    rho = state.rho.data
    f = gen.rhs
    k1 = f(rho)
    k2 = f(rho + (0.5 * dt) * k1)
    k3 = f(rho + (0.5 * dt) * k2)
    k4 = f(rho + dt * k3)
    new = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    new = 0.5 * (new + new.conj().T)

    trace = float(np.real(np.trace(new)))
    drift = abs(trace - 1.0)
    if not np.isfinite(trace) or drift > max_drift or not np.all(np.isfinite(new)):
        raise InstabilityError(t_last_good=state.t, drift=drift, dt=dt)
    if drift > DRIFT_WARNING:
        logger.warning(f"t={state.t + dt:.6g}: trace drift {drift:.3e} per step")
    elif logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"t={state.t + dt:.6g}: trace drift {drift:.3e}")
    return JointState(QOperator(new / trace, state.rho.dims), state.t + dt, drift)


def iter_trajectory(
    config: SimulationConfig,
    generator: GeneratorBundle | None = None,
    initial: JointState | None = None,
) -> Iterator[JointState]:
    """
    Lazily yield recorded samples from t = 0 to t_max.

    Args:
        config: Run configuration (dt, t_max and record_stride are read from
            ``config.integrator``).
        generator: Prebuilt generator; assembled from config when omitted.
        initial: Initial state; ``initial_joint_state(config)`` when omitted.

    Raises:
        InstabilityError: From rk4_step.
    """
    settings = config.integrator
    gen = generator if generator is not None else assemble_generator(config)
    state = initial if initial is not None else initial_joint_state(config)
    dt = settings.dt
    stride = settings.record_stride
    yield state
    for k in range(1, settings.n_steps + 1):
        stepped = rk4_step(state, dt, gen)
        state = JointState(stepped.rho, k * dt, stepped.trace_drift)
        if k % stride == 0:
            yield state


def evolve(
    config: SimulationConfig,
    observer: Observer | None = None,
    *,
    generator: GeneratorBundle | None = None,
    keep_states: bool = True,
) -> list[JointState]:
    """
    Integrate ``config`` and return the recorded samples.

    ``observer`` is called with every recorded sample. With
    ``keep_states=False`` only the last sample is returned.
    """
    states: list[JointState] = []
    last: JointState | None = None
    for state in iter_trajectory(config, generator):
        if observer is not None:
            observer(state)
        if keep_states:
            states.append(state)
        last = state
    if not keep_states and last is not None:
        states.append(last)
    return states
