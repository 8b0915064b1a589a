"""Majorization between occupation vectors, and the sign-pattern labels of a cycle."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .spectra import GapVector
from .thermo import ThermalState, tail_sums

PROBABILITY_TOL = 1e-9
GAP_TOL = 1e-9
NORMALIZATION_TOL = 1e-9


def _as_distribution(v: Sequence[float] | ThermalState, name: str) -> tuple[float, ...]:
    if isinstance(v, ThermalState):
        v = v.probabilities
    v = tuple(float(x) for x in v)
    if not v:
        raise ValueError(f"{name} is empty")
    total = math.fsum(v)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"{name} is not normalized (sum {total!r})")
    return v


def majorizes(q, p, tol: float = 0.0) -> bool:
    """True when ``q`` majorizes ``p`` (``p`` is more mixed than ``q``).

    Both vectors are sorted decreasingly. Since the totals agree, the prefix
    condition ``sum(q[:k]) >= sum(p[:k])`` is tested in the equivalent tail
    form ``sum(q[k:]) <= sum(p[k:])``; tails of small entries stay exact where
    prefixes close to 1 would round away.
    """
    q = _as_distribution(q, "q")
    p = _as_distribution(p, "p")
    if len(q) != len(p):
        raise ValueError(f"length mismatch: {len(q)} vs {len(p)}")
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol!r}")
    tq = tail_sums(sorted(q, reverse=True))
    tp = tail_sums(sorted(p, reverse=True))
    return all(a <= b + tol for a, b in zip(tq, tp))


class Majorization(enum.Enum):
    HOT_MAJORIZED = "P<P'"  # cold majorizes hot
    COLD_MAJORIZED = "P'<P"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def majorization_verdict(hot, cold, tol: float = PROBABILITY_TOL) -> Majorization:
    up = majorizes(cold, hot, tol)
    down = majorizes(hot, cold, tol)
    if up and down:
        return Majorization.EQUAL
    if up:
        return Majorization.HOT_MAJORIZED
    if down:
        return Majorization.COLD_MAJORIZED
    return Majorization.INCOMPARABLE


class ProbabilityCase(enum.Enum):
    A = "a"  # P1 > P1', P3 > P3'
    B = "b"  # P1 < P1', P3 < P3'
    C = "c"  # P1 < P1', P3 > P3'
    D = "d"  # P1 > P1', P3 < P3'
    BOUNDARY = "boundary"


def _sign(x: float, tol: float) -> int:
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


def classify_probability_case(
    hot: ThermalState, cold: ThermalState, tol: float = PROBABILITY_TOL
) -> Optional[ProbabilityCase]:
    """Label by the signs of the ground and top population shifts.

    For two levels only cases c and d can occur. Beyond three levels the
    ground/top signs no longer settle the order, so only case c is reported,
    meaning strict ``P < P'`` majorization; anything else gives ``None``.
    """
    if hot.n != cold.n:
        raise ValueError(f"size mismatch: {hot.n} vs {cold.n}")
    if hot.n > 3:
        if majorization_verdict(hot, cold, tol) is Majorization.HOT_MAJORIZED:
            return ProbabilityCase.C
        return None
    ground = _sign(hot[0] - cold[0], tol)
    top = _sign(hot[-1] - cold[-1], tol)
    if ground == 0 or top == 0:
        return ProbabilityCase.BOUNDARY
    return {
        (1, 1): ProbabilityCase.A,
        (-1, -1): ProbabilityCase.B,
        (-1, 1): ProbabilityCase.C,
        (1, -1): ProbabilityCase.D,
    }[ground, top]


class GapChange(enum.Enum):
    SHRINKS = "shrinks"
    EXPANDS = "expands"
    FIXED = "fixed"


class GapLabel(enum.Enum):
    COND1 = "1"  # both shrink
    COND2 = "2"  # lower shrinks, upper expands
    COND3 = "3"  # upper shrinks, lower expands
    COND4 = "4"  # both expand
    FIXED_LOWER = "fixed-lower"
    FIXED_UPPER = "fixed-upper"
    MIXED = "mixed"  # both gaps fixed, or not a three-level medium


_THREE_LEVEL_LABELS = {
    (GapChange.SHRINKS, GapChange.SHRINKS): GapLabel.COND1,
    (GapChange.SHRINKS, GapChange.EXPANDS): GapLabel.COND2,
    (GapChange.EXPANDS, GapChange.SHRINKS): GapLabel.COND3,
    (GapChange.EXPANDS, GapChange.EXPANDS): GapLabel.COND4,
}


@dataclass(frozen=True)
class GapCondition:
    """How each gap changes in the first adiabatic stroke (hot -> cold)."""

    changes: tuple[GapChange, ...]
    label: GapLabel

    @property
    def shrinking(self) -> int:
        return self.changes.count(GapChange.SHRINKS)

    @property
    def expanding(self) -> int:
        return self.changes.count(GapChange.EXPANDS)

    @property
    def fixed(self) -> int:
        return self.changes.count(GapChange.FIXED)


def classify_gap_condition(
    hot: GapVector, cold: GapVector, tol: float = GAP_TOL
) -> GapCondition:
    if len(hot) != len(cold):
        raise ValueError(f"gap vectors differ in length: {len(hot)} vs {len(cold)}")
    changes = []
    for w, wc in zip(hot.gaps, cold.gaps):
        if abs(w - wc) <= tol * max(w, wc):
            changes.append(GapChange.FIXED)
        elif w > wc:
            changes.append(GapChange.SHRINKS)
        else:
            changes.append(GapChange.EXPANDS)
    changes = tuple(changes)
    label = GapLabel.MIXED
    if len(changes) == 2:
        lower, upper = changes
        if lower is GapChange.FIXED and upper is not GapChange.FIXED:
            label = GapLabel.FIXED_LOWER
        elif upper is GapChange.FIXED and lower is not GapChange.FIXED:
            label = GapLabel.FIXED_UPPER
        else:
            label = _THREE_LEVEL_LABELS.get(changes, GapLabel.MIXED)
    return GapCondition(changes, label)
