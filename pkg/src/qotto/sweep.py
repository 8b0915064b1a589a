"""Cold-bath temperature sweeps and the figure presets."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .analysis import gap_shrink_fractions
from .majorization import (
    PROBABILITY_TOL,
    classify_gap_condition,
    classify_probability_case,
    majorization_verdict,
)
from .spectra import EnergySpectrum, Family, build_family
from .thermo import OttoCycle, cycle_outcome

COLUMNS = ("t2", "w", "q1", "q2", "eta", "dp1", "dp3", "case", "cond", "maj", "xi1", "xi2")


@dataclass(frozen=True)
class SweepSpec:
    hot: EnergySpectrum
    cold: EnergySpectrum
    t_hot: float
    lo: float
    hi: float
    points: int = 181
    columns: tuple[str, ...] = COLUMNS
    tol: float = PROBABILITY_TOL
    name: str = ""

    def __post_init__(self) -> None:
        if self.hot.n != self.cold.n:
            raise ValueError(f"hot and cold spectra differ in size ({self.hot.n} vs {self.cold.n})")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got lo={self.lo!r}, hi={self.hi!r}")
        if self.points < 2:
            raise ValueError(f"need at least 2 points, got {self.points}")
        if not self.lo > 0:
            raise ValueError(f"swept t2 must stay positive, got lo={self.lo!r}")
        if not self.hi < self.t_hot:
            raise ValueError(f"swept t2 must stay below t1={self.t_hot!r}, got hi={self.hi!r}")
        unknown = set(self.columns) - set(COLUMNS)
        if unknown:
            raise ValueError(f"unknown columns {sorted(unknown)}; choose from {', '.join(COLUMNS)}")

    def grid(self) -> list[float]:
        return np.linspace(self.lo, self.hi, self.points).tolist()

    def cycle(self, t_cold: float) -> OttoCycle:
        return OttoCycle(self.hot, self.cold, self.t_hot, t_cold)


@dataclass(frozen=True)
class SweepRow:
    t2: float
    w: float
    q1: float
    q2: float
    eta: Optional[float]
    dp1: float
    dp3: float
    case: str
    cond: str
    maj: str
    xi1: float
    xi2: Optional[float]


def evaluate_row(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> SweepRow:
    """One table row; ``dp3`` uses the top level for media other than three-level."""
    outcome = cycle_outcome(cycle)
    hot, cold = cycle.hot_state, cycle.cold_state
    case = classify_probability_case(hot, cold, tol)
    xi = gap_shrink_fractions(cycle)
    return SweepRow(
        t2=cycle.t_cold,
        w=outcome.work_net,
        q1=outcome.q_hot,
        q2=outcome.q_cold,
        eta=outcome.efficiency,
        dp1=cold[0] - hot[0],
        dp3=hot[-1] - cold[-1],
        case="" if case is None else case.value,
        cond=classify_gap_condition(cycle.hot_gaps, cycle.cold_gaps).label.value,
        maj=majorization_verdict(hot, cold, tol).value,
        xi1=xi[0],
        xi2=xi[1] if len(xi) > 1 else None,
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    return [evaluate_row(spec.cycle(t), spec.tol) for t in spec.grid()]


def _field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: Iterable[SweepRow], out, columns: Sequence[str] = COLUMNS) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_field(getattr(row, c)) for c in columns])


def to_csv(rows: Iterable[SweepRow], columns: Sequence[str] = COLUMNS) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, columns)
    return buf.getvalue()


def family_sweep(
    family: Family | str,
    hot: tuple[float, float],
    cold: tuple[float, float],
    t_hot: float,
    lo: float = 0.2,
    hi: float = 3.8,
    points: int = 181,
    **kwargs,
) -> SweepSpec:
    """Sweep between two members ``(B, J)`` of one toy family."""
    return SweepSpec(
        build_family(family, *hot), build_family(family, *cold), t_hot, lo, hi, points, **kwargs
    )


# (B, J) pairs at the hot and cold contacts
PRESETS = {
    "fig3": lambda: family_sweep(Family.FIG_A, (5.0, 2.0), (3.0, 2.0), 4.0, name="fig3"),
    "fig4": lambda: family_sweep(Family.FIG_B, (5.0, 6.0), (3.0, 6.0), 4.0, name="fig4"),
    "fig5": lambda: family_sweep(Family.FIG_A, (5.0, 2.0), (3.0, 2.0), 4.0, name="fig5"),
    "fig6": lambda: family_sweep(Family.FIG_C, (1.0, 4.0), (1.0, 2.0), 4.0, name="fig6"),
}


def preset(name: str, **overrides) -> SweepSpec:
    try:
        spec = PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    if overrides:
        spec = SweepSpec(**{**spec.__dict__, **overrides})
    return spec
