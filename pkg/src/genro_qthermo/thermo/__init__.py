# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Heat currents, entropy production, non-Markovianity witness and quantifier."""

from .functionals import (
    IMAG_TOL,
    ThermoAnalyzer,
    bath_terms,
    entropy_rate,
    epr,
    epr_relative_entropy,
    heat_current_markov,
    heat_current_nm,
    partial_superoperators,
    quantifier,
    spohn_check,
    witness,
    witness_summands,
)
from .records import ReferenceStates, ThermoRecord

__all__ = [
    "ThermoRecord",
    "ReferenceStates",
    "ThermoAnalyzer",
    "IMAG_TOL",
    "heat_current_markov",
    "heat_current_nm",
    "entropy_rate",
    "epr",
    "partial_superoperators",
    "epr_relative_entropy",
    "witness_summands",
    "witness",
    "quantifier",
    "spohn_check",
    "bath_terms",
]
