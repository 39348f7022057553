# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Built-in verification suite.

Runs a short trajectory of a scenario and checks, at every recorded sample:

- closure: tr_baths of the joint right-hand side equals commutator plus
  D_M_j plus D_NM_j (1e-10)
- p_invariance: currents, sigma, M, Mbar, the relative-entropy sigma and M
  evaluated with the partial superoperators L_NM_j agree across
  p in {0, 0.5, 1} (1e-10, relative above 1)
- current_additivity: sum_j J_j == tr(H_s d rho_s/dt) (1e-9)
- epr_two_form: balance sigma == relative-entropy sigma (1e-8)
- spohn_margin: sigma + M >= -tol_spohn * max(1, max |sigma|) on samples whose
  logarithm is not floor-dominated
- density_sanity: |tr - 1| <= 1e-9 and min eigenvalue >= -1e-8

plus, once per run:

- detailed_balance: gamma_up = gamma_down e^{-w/T} for every channel (1e-9)
- markov_stationarity: D_M_j(rho_th_j) = 0 (1e-10)
- integrator_order: rho_s at t = min(1, t_max) for dt, dt/2, dt/4; measured
  order >= 3.7 unless the differences are at the 1e-12 noise floor

Check failures never raise: they become failed report entries. The step-halving
runs and the main check trajectory are independent and go through a
LocalExecutor concurrently.
"""

from __future__ import annotations

import asyncio
import dataclasses
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import orjson

from ..dynamics import assemble_generator, evolve, iter_trajectory, system_marginal
from ..executors import LocalExecutor
from ..markov import RatePair, ohmic_rates
from ..model import SimulationConfig
from ..thermo import (
    ReferenceStates,
    ThermoAnalyzer,
    ThermoRecord,
    partial_superoperators,
    witness_summands,
)
from ..types import RateFunction

__all__ = [
    "CheckResult",
    "VerificationReport",
    "VerificationSuite",
    "verify",
    "swapped_rates",
    "trajectory_checks",
    "final_system_state",
    "order_result",
    "VERIFY_T_MAX",
]

logger = logging.getLogger("genro_qthermo.runner")

VERIFY_T_MAX = 2.0
P_VALUES = (0.0, 0.5, 1.0)
CLOSURE_TOL = 1e-10
P_INVARIANCE_TOL = 1e-10
ADDITIVITY_TOL = 1e-9
EPR_FORMS_TOL = 1e-8
DETAILED_BALANCE_TOL = 1e-9
STATIONARITY_TOL = 1e-10
TRACE_TOL = 1e-9
MIN_EIG_TOL = -1e-8
MIN_ORDER = 3.7
NOISE_FLOOR = 1e-12


@dataclass(frozen=True, slots=True)
class CheckResult:
    """
    Outcome of one invariant check.

    Attributes:
        name: Check name.
        passed: True if the invariant held everywhere.
        value: Worst observed value (deviation, order, margin...).
        tolerance: Threshold the value was compared against.
        detail: Free text (where the worst case occurred, or the error).
    """

    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass
class VerificationReport:
    """All check results for one scenario."""

    scenario: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "passed": self.passed,
            "checks": [dataclasses.asdict(c) for c in self.checks],
        }

    def to_json(self) -> bytes:
        """Report as indented JSON (non-finite values become null)."""
        return orjson.dumps(self.as_dict(), option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY)

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_json())


def _scaled(deviation: float, reference: float) -> float:
    return deviation / max(1.0, abs(reference))


class _Worst:
    """Running maximum of a deviation with the time it occurred."""

    __slots__ = ("name", "tolerance", "value", "t")

    def __init__(self, name: str, tolerance: float) -> None:
        self.name = name
        self.tolerance = tolerance
        self.value = 0.0
        self.t = 0.0

    def update(self, value: float, t: float) -> None:
        if not math.isfinite(value) or value > self.value:
            self.value = value if math.isfinite(value) else math.inf
            self.t = t

    def result(self) -> CheckResult:
        passed = self.value <= self.tolerance
        return CheckResult(self.name, passed, self.value, self.tolerance, f"worst at t={self.t:.6g}")


def _failed(name: str, tolerance: float, error: BaseException) -> CheckResult:
    return CheckResult(name, False, math.nan, tolerance, f"{type(error).__name__}: {error}")


# =============================================================================
# Checks on the generator alone
# =============================================================================


def check_detailed_balance(config: SimulationConfig, rate_fn: RateFunction) -> CheckResult:
    """gamma_up = gamma_down e^{-w/T} for every Markovian channel.

    Checked in the decaying direction so that w/T of several hundred (the
    vacuum limit) underflows to 0 instead of overflowing.
    """
    name = "detailed_balance"
    try:
        generator = assemble_generator(config, rate_fn=rate_fn)
        worst = 0.0
        where = "no Markovian baths"
        for dissipator in generator.system_dissipators:
            for omega, rates in dissipator.positive_frequency_rates():
                expected = rates.gamma_down * math.exp(-omega / dissipator.temperature)
                deviation = abs(rates.gamma_up - expected) / max(
                    abs(rates.gamma_up), abs(expected), 1e-300
                )
                if rates.gamma_up == 0.0 and expected == 0.0:
                    deviation = 0.0
                if deviation >= worst:
                    worst = deviation
                    where = f"qubit {dissipator.qubit_index + 1}, omega={omega:.6g}"
        return CheckResult(name, worst <= DETAILED_BALANCE_TOL, worst, DETAILED_BALANCE_TOL, where)
    except Exception as e:
        return _failed(name, DETAILED_BALANCE_TOL, e)


def check_markov_stationarity(config: SimulationConfig, rate_fn: RateFunction) -> CheckResult:
    """D_M_j(e^{-H_s/T_j}/Z) = 0 for every Markovian bath."""
    name = "markov_stationarity"
    try:
        generator = assemble_generator(config, rate_fn=rate_fn)
        references = ReferenceStates.build(generator.h_s, config.temperatures)
        worst = 0.0
        for dissipator in generator.system_dissipators:
            rho_th = references.states[dissipator.qubit_index]
            worst = max(worst, float(np.max(np.abs(dissipator(rho_th).data), initial=0.0)))
        return CheckResult(name, worst <= STATIONARITY_TOL, worst, STATIONARITY_TOL)
    except Exception as e:
        return _failed(name, STATIONARITY_TOL, e)


# =============================================================================
# Trajectory checks
# =============================================================================


def trajectory_checks(config: SimulationConfig, rate_fn: RateFunction = ohmic_rates) -> list[CheckResult]:
    """Run ``config`` and check every sample. Top-level so it can be pickled."""
    names = (
        ("closure", CLOSURE_TOL),
        ("p_invariance", P_INVARIANCE_TOL),
        ("current_additivity", ADDITIVITY_TOL),
        ("epr_two_form", EPR_FORMS_TOL),
    )
    worst = {n: _Worst(n, tol) for n, tol in names}
    sigma_max = 0.0
    margins: list[tuple[float, float]] = []
    density_worst = 0.0
    density_detail = ""

    try:
        generator = assemble_generator(config, rate_fn=rate_fn)
        analyzers = [
            ThermoAnalyzer(generator, dataclasses.replace(config, p_weight=p)) for p in P_VALUES
        ]
        nm_logs = analyzers[0].nm_reference_logs
        n_nm = len(generator.nm_interactions)
        for state in iter_trajectory(config, generator):
            t = state.t
            terms = analyzers[0].terms(state)
            joint_rhs = generator(state.rho)
            closure = system_marginal(joint_rhs, generator.n_qubits) - terms.total
            worst["closure"].update(float(np.max(np.abs(closure.data), initial=0.0)), t)

            records: list[ThermoRecord] = [a.record(state) for a in analyzers]
            base = records[0]
            witness_from_partials = []
            for p in P_VALUES:
                partials = partial_superoperators(terms, p, generator)
                nm_partials = [
                    partials[i.qubit_index] for i in generator.nm_interactions
                ]
                witness_from_partials.append(
                    sum(witness_summands(terms.rho_s, nm_partials, nm_logs, config.eps_log))
                )
            vectors = [
                np.array(
                    [r.epr, *r.currents, r.witness, r.quantifier, r.epr_relative, w_l]
                )
                for r, w_l in zip(records, witness_from_partials)
            ]
            if n_nm == 0:
                # no spin-star group: witness from partials is identically 0
                vectors = [v[:-1] for v in vectors]
            stacked = np.vstack(vectors)
            spread = np.max(stacked, axis=0) - np.min(stacked, axis=0)
            scale = np.maximum(1.0, np.max(np.abs(stacked), axis=0))
            p_dev = float(np.max(spread / scale))
            w_dev = _scaled(abs(witness_from_partials[1] - base.witness), base.witness)
            worst["p_invariance"].update(max(p_dev, w_dev if n_nm else 0.0), t)

            worst["current_additivity"].update(
                _scaled(abs(sum(base.currents) - base.global_current), base.global_current), t
            )
            worst["epr_two_form"].update(_scaled(abs(base.epr - base.epr_relative), base.epr), t)

            sigma_max = max(sigma_max, abs(base.epr))
            if not base.log_floored:
                margins.append((t, base.spohn_margin))
            # ratio to tolerance; <= 1 passes
            density = max(base.trace_err / TRACE_TOL, -base.min_eig / abs(MIN_EIG_TOL))
            if density > density_worst:
                density_worst = density
                density_detail = (
                    f"t={t:.6g}: trace_err={base.trace_err:.3e} min_eig={base.min_eig:.3e}"
                )
    except Exception as e:
        tol_spohn = config.tol_spohn
        return [_failed(n, tol, e) for n, tol in names] + [
            _failed("spohn_margin", tol_spohn, e),
            _failed("density_sanity", 1.0, e),
        ]

    results = [w.result() for w in worst.values()]
    threshold = -config.tol_spohn * max(1.0, sigma_max)
    if margins:
        t_min, m_min = min(margins, key=lambda item: item[1])
        results.append(
            CheckResult(
                "spohn_margin", m_min >= threshold, m_min, threshold, f"minimum at t={t_min:.6g}"
            )
        )
    else:
        results.append(
            CheckResult("spohn_margin", True, 0.0, threshold, "every sample floor-dominated")
        )
    results.append(CheckResult("density_sanity", density_worst <= 1.0, density_worst, 1.0, density_detail))
    return results


def final_system_state(config: SimulationConfig) -> np.ndarray:
    """rho_s at t_max. Top-level so it can be pickled."""
    generator = assemble_generator(config)
    last = evolve(config, generator=generator, keep_states=False)[-1]
    return system_marginal(last.rho, generator.n_qubits).data


def order_result(finals: Sequence[np.ndarray], dt: float, t_end: float) -> CheckResult:
    """Measured convergence order from final states at dt, dt/2, dt/4."""
    coarse = float(np.max(np.abs(finals[0] - finals[1])))
    fine = float(np.max(np.abs(finals[1] - finals[2])))
    detail = f"dt={dt:g}, t={t_end:g}, |d1|={coarse:.3e}, |d2|={fine:.3e}"
    if fine <= NOISE_FLOOR or coarse <= NOISE_FLOOR:
        return CheckResult("integrator_order", True, math.inf, MIN_ORDER, detail + " (noise floor)")
    order = math.log2(coarse / fine)
    return CheckResult("integrator_order", order >= MIN_ORDER, order, MIN_ORDER, detail)


def _order_configs(config: SimulationConfig) -> tuple[list[SimulationConfig], float]:
    dt = config.integrator.dt
    # whole number of coarse steps, so every resolution lands on the same t
    t_end = max(1, int(round(min(1.0, config.integrator.t_max) / dt))) * dt
    configs = [
        dataclasses.replace(
            config,
            integrator=dataclasses.replace(
                config.integrator, dt=dt / divisor, t_max=t_end, record_stride=1
            ),
        )
        for divisor in (1, 2, 4)
    ]
    return configs, t_end


class VerificationSuite:
    """
    Runs every check for one scenario.

    Args:
        config: Scenario to verify.
        name: Scenario name used in the report.
        rate_fn: Rate function for the Markovian channels (fault injection).
        t_max: Length of the check trajectory (capped by the scenario's t_max).
        bypass: Run the parallel parts in-process.
    """

    __slots__ = ("config", "name", "rate_fn", "bypass")

    def __init__(
        self,
        config: SimulationConfig,
        name: str = "",
        rate_fn: RateFunction | None = None,
        t_max: float = VERIFY_T_MAX,
        bypass: bool = False,
    ) -> None:
        short = min(config.integrator.t_max, t_max)
        self.config = dataclasses.replace(
            config, integrator=dataclasses.replace(config.integrator, t_max=short)
        )
        self.name = name
        self.rate_fn = rate_fn if rate_fn is not None else ohmic_rates
        # custom rate functions may be closures; keep them in-process
        self.bypass = bypass or rate_fn is not None

    async def _run_parallel(self) -> tuple[list[CheckResult], CheckResult]:
        order_configs, t_end = _order_configs(self.config)
        with LocalExecutor(name="verify", max_workers=4, bypass=self.bypass) as executor:
            main, finals = await asyncio.gather(
                executor.submit(trajectory_checks, self.config, self.rate_fn),
                executor.map(final_system_state, order_configs, return_exceptions=True),
                return_exceptions=True,
            )
        if isinstance(finals, BaseException):
            finals = [finals]
        if isinstance(main, BaseException):
            main = [_failed("trajectory", 0.0, main)]
        errors = [f for f in finals if isinstance(f, BaseException)]
        if errors:
            order = _failed("integrator_order", MIN_ORDER, errors[0])
        else:
            order = order_result(finals, self.config.integrator.dt, t_end)  # type: ignore[arg-type]
        return main, order  # type: ignore[return-value]

    def run(self) -> VerificationReport:
        """Execute all checks and return the report."""
        report = VerificationReport(self.name)
        report.checks.append(check_detailed_balance(self.config, self.rate_fn))
        report.checks.append(check_markov_stationarity(self.config, self.rate_fn))
        main, order = asyncio.run(self._run_parallel())
        report.checks.extend(main)
        report.checks.append(order)
        for check in report.checks:
            status = "ok" if check.passed else "FAIL"
            logger.info(f"{status:4} {check.name}: {check.value:.3e} (tol {check.tolerance:.1e}) {check.detail}")
        return report


def verify(
    config: SimulationConfig,
    name: str = "",
    rate_fn: RateFunction | None = None,
    t_max: float = VERIFY_T_MAX,
    bypass: bool = False,
) -> VerificationReport:
    """Run the verification suite on a short trajectory of ``config``."""
    return VerificationSuite(config, name, rate_fn, t_max, bypass).run()


def swapped_rates(omega: float, T: float, kappa: float) -> RatePair:
    """Ohmic rates with emission and absorption exchanged (fault injection)."""
    rates = ohmic_rates(omega, T, kappa)
    return dataclasses.replace(rates, gamma_down=rates.gamma_up, gamma_up=rates.gamma_down)

