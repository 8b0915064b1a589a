"""Gibbs states and the heat/work bookkeeping of a quasi-static Otto cycle.

Stage A thermalises the medium with the hot bath on the hot spectrum, stage B
is an adiabatic switch to the cold spectrum with frozen populations, stage C
thermalises with the cold bath and stage D switches back. Only the two Gibbs
states and the two spectra enter the cycle averages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate
from typing import Optional, Sequence

from .spectra import EnergySpectrum, GapVector


@dataclass(frozen=True)
class ThermalState:
    spectrum: EnergySpectrum
    temperature: float
    probabilities: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.probabilities)

    def __getitem__(self, k: int) -> float:
        return self.probabilities[k]


def gibbs_state(spectrum: EnergySpectrum, T: float) -> ThermalState:
    """Canonical occupations ``P_k ~ exp(-e_k / T)``.

    The ground level is factored out of the partition function, so every
    Boltzmann weight lies in (0, 1]; weights of very high levels may underflow
    to zero, nothing overflows.
    """
    T = float(T)
    if not (math.isfinite(T) and T > 0):
        raise ValueError(f"temperature must be finite and positive, got {T!r}")
    e0 = spectrum.levels[0]
    weights = [math.exp(-(e - e0) / T) for e in spectrum.levels]
    z = math.fsum(weights)
    return ThermalState(spectrum, T, tuple(w / z for w in weights))


def tail_sums(values: Sequence[float]) -> list[float]:
    """``out[j] = sum(values[j+1:])`` for ``j = 0 .. n-2``."""
    tails = list(accumulate(reversed(values[1:])))
    tails.reverse()
    return tails


@dataclass(frozen=True)
class OttoCycle:
    hot: EnergySpectrum
    cold: EnergySpectrum
    t_hot: float
    t_cold: float

    def __post_init__(self) -> None:
        if self.hot.n != self.cold.n:
            raise ValueError(
                f"hot and cold spectra differ in size ({self.hot.n} vs {self.cold.n})"
            )
        for name in ("t_hot", "t_cold"):
            t = float(getattr(self, name))
            if not math.isfinite(t):
                raise ValueError(f"{name} must be finite, got {t!r}")
            object.__setattr__(self, name, t)
        if not self.t_cold > 0:
            raise ValueError(f"t_cold must be positive, got {self.t_cold!r}")
        if not self.t_hot > self.t_cold:
            raise ValueError(
                f"need t_hot > t_cold, got t_hot={self.t_hot!r}, t_cold={self.t_cold!r}"
            )

    @property
    def n(self) -> int:
        return self.hot.n

    @cached_property
    def hot_state(self) -> ThermalState:
        return gibbs_state(self.hot, self.t_hot)

    @cached_property
    def cold_state(self) -> ThermalState:
        return gibbs_state(self.cold, self.t_cold)

    @cached_property
    def outcome(self) -> "CycleOutcome":
        return cycle_outcome(self)

    @cached_property
    def hot_gaps(self) -> GapVector:
        return self.hot.gaps()

    @cached_property
    def cold_gaps(self) -> GapVector:
        return self.cold.gaps()

    def to_dict(self) -> dict:
        return {
            "hot": list(self.hot.levels),
            "cold": list(self.cold.levels),
            "t_hot": self.t_hot,
            "t_cold": self.t_cold,
        }

    def command_line(self) -> str:
        """Arguments that re-evaluate this cycle through the ``cycle`` subcommand."""
        return (
            f"cycle --hot={self.hot} --cold={self.cold} "
            f"--t1 {self.t_hot!r} --t2 {self.t_cold!r}"
        )


@dataclass(frozen=True)
class CycleOutcome:
    """Cycle averages; positive heat is absorbed by the medium, ``work_net = -W``."""

    q_hot: float
    q_cold: float
    work_net: float

    @property
    def efficiency(self) -> Optional[float]:
        return efficiency(self)


def cycle_outcome(cycle: OttoCycle) -> CycleOutcome:
    p = cycle.hot_state.probabilities
    pc = cycle.cold_state.probabilities
    e, ec = cycle.hot.levels, cycle.cold.levels
    dp = [a - b for a, b in zip(p, pc)]
    q_hot = math.fsum(ek * d for ek, d in zip(e, dp))
    q_cold = -math.fsum(ek * d for ek, d in zip(ec, dp))
    work = math.fsum((a - b) * d for a, b, d in zip(e, ec, dp))
    return CycleOutcome(q_hot, q_cold, work)


def heats_gap_form(cycle: OttoCycle) -> tuple[float, float, float]:
    """``(Q_hot, Q_cold, work_net)`` written as gaps times tail-sum population shifts."""
    p = cycle.hot_state.probabilities
    pc = cycle.cold_state.probabilities
    # tail sums taken separately keep tiny upper-level populations exact
    shift = [a - b for a, b in zip(tail_sums(p), tail_sums(pc))]
    w, wc = cycle.hot_gaps.gaps, cycle.cold_gaps.gaps
    q_hot = math.fsum(g * s for g, s in zip(w, shift))
    q_cold = -math.fsum(g * s for g, s in zip(wc, shift))
    work = math.fsum((a - b) * s for a, b, s in zip(w, wc, shift))
    return q_hot, q_cold, work


def efficiency(outcome: CycleOutcome) -> Optional[float]:
    """``work_net / Q_hot`` in the engine regime, ``None`` otherwise."""
    if outcome.q_hot > 0 and outcome.work_net > 0:
        return outcome.work_net / outcome.q_hot
    return None
