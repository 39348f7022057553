# Copyright 2025 Softwell S.r.l.
# Licensed under the Apache License, Version 2.0

"""CSV time series and the sidecar plot script.

Column order::

    t, E, S, dSdt, J_1..J_k, sigma, M_NM, Mbar_NM, spohn_margin,
    trace_err, min_eig, log_floored

Floats are written with 17 significant digits; log_floored as 0/1. Output
is byte-identical for identical inputs.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import IO, TYPE_CHECKING

if TYPE_CHECKING:
    from ..dynamics import JointState
    from ..thermo import ThermoRecord

__all__ = ["csv_header", "format_row", "CsvWriter", "write_plot_script", "plot_script_path"]


def csv_header(n_baths: int) -> list[str]:
    """Column names for ``n_baths`` heat currents."""
    return [
        "t",
        "E",
        "S",
        "dSdt",
        *(f"J_{j}" for j in range(1, n_baths + 1)),
        "sigma",
        "M_NM",
        "Mbar_NM",
        "spohn_margin",
        "trace_err",
        "min_eig",
        "log_floored",
    ]


def _f(value: float) -> str:
    return format(float(value), ".17g")


def format_row(record: ThermoRecord) -> list[str]:
    """One CSV row, in header order."""
    return [
        _f(record.t),
        _f(record.energy),
        _f(record.entropy),
        _f(record.entropy_rate),
        *(_f(j) for j in record.currents),
        _f(record.epr),
        _f(record.witness),
        _f(record.quantifier),
        _f(record.spohn_margin),
        _f(record.trace_err),
        _f(record.min_eig),
        "1" if record.log_floored else "0",
    ]


class CsvWriter:
    """Final sink of the observer chain: one CSV row per record."""

    __slots__ = ("path", "rows", "_file", "_writer")

    def __init__(self, path: str | Path, n_baths: int) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.rows = 0
        self._file: IO[str] = self.path.open("w", encoding="utf-8", newline="")
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(csv_header(n_baths))

    def __call__(self, state: JointState, record: ThermoRecord) -> None:
        self._writer.writerow(format_row(record))
        self.rows += 1

    def finish(self) -> None:
        self.close()

    def close(self) -> None:
        if not self._file.closed:
            self._file.close()

    def __enter__(self) -> CsvWriter:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def __repr__(self) -> str:
        """Return string representation."""
        return f"CsvWriter(path={str(self.path)!r}, rows={self.rows})"


PLOT_TEMPLATE = '''"""Plot {csv_name}: non-Markovianity quantifier and modified Spohn margin."""

import csv
from pathlib import Path

import matplotlib.pyplot as plt

CSV = Path(__file__).with_name("{csv_name}")

with CSV.open(newline="") as f:
    rows = list(csv.DictReader(f))
t = [float(r["t"]) for r in rows]
mbar = [float(r["Mbar_NM"]) for r in rows]
margin = [float(r["spohn_margin"]) for r in rows]

fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
ax1.plot(t, mbar, lw=0.8)
ax1.set_ylabel("Mbar_NM")
ax1.set_title("{title}")
ax2.plot(t, margin, lw=0.8, color="tab:red")
ax2.axhline(0.0, color="k", lw=0.5)
ax2.set_ylabel("sigma + M_NM")
ax2.set_xlabel("t")
fig.tight_layout()
fig.savefig(CSV.with_suffix(".png"), dpi=150)
plt.show()
'''


def plot_script_path(csv_path: str | Path) -> Path:
    """``run.csv`` -> ``run.csv.plot.py``."""
    path = Path(csv_path)
    return path.with_name(f"{path.name}.plot.py")


def write_plot_script(csv_path: str | Path, title: str = "") -> Path:
    """Write the matplotlib script next to the CSV (not executed)."""
    path = Path(csv_path)
    script = plot_script_path(path)
    script.write_text(
        PLOT_TEMPLATE.format(csv_name=path.name, title=title or path.stem), encoding="utf-8"
    )
    return script
