# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""Small helpers shared by the runner and the CLI.

Exports:
    split_and_strip: Split comma-separated string and strip whitespace.
    parse_float_list: Comma-separated floats (eps_log sweeps).
    parse_enabled: on/off/true/false to bool.
    cap_blas_threads: Set the BLAS/OpenMP thread variables.
"""

from __future__ import annotations

import os
from typing import Any

THREAD_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def split_and_strip(
    value: str | list[str] | None, default: list[str] | None = None
) -> list[str]:
    """Split comma-separated string and strip whitespace from each item.

    Empty items are dropped. If value is already a list, returns a copy. If
    None, returns default.

    Examples:
        split_and_strip("a, b, c")  # ["a", "b", "c"]
        split_and_strip(["x", "y"])  # ["x", "y"]
        split_and_strip(None, ["default"])  # ["default"]
    """
    if value is None:
        return default if default is not None else []
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return list(value)


def parse_float_list(value: str | list[Any] | None) -> list[float]:
    """"1e-12, 1e-10" -> [1e-12, 1e-10]."""
    return [float(v) for v in split_and_strip(value)]


def parse_enabled(value: Any) -> bool:
    """Parse on/off/true/false value to bool."""
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        return value.lower() in ("on", "true", "yes", "1")
    return bool(value)


def cap_blas_threads(n: int) -> None:
    """Export the thread variables read by BLAS/OpenMP at library load.

    Only effective before numpy is first imported in the process. n <= 0
    leaves the environment untouched.
    """
    if n > 0:
        for var in THREAD_VARS:
            os.environ[var] = str(n)


__all__ = ["THREAD_VARS", "split_and_strip", "parse_float_list", "parse_enabled", "cap_blas_threads"]
