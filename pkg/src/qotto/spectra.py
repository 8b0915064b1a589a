"""Energy spectra of the working medium and the toy three-level families."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

# Relative spacing below which two levels count as degenerate.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class GapVector:
    """Transition frequencies ``w_j = e_{j+1} - e_j`` of a spectrum."""

    gaps: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))
        if not self.gaps:
            raise ValueError("a gap vector needs at least one gap")
        for j, g in enumerate(self.gaps):
            if not (math.isfinite(g) and g > 0):
                raise ValueError(f"gap {j} must be finite and positive, got {g!r}")

    @property
    def total(self) -> float:
        return math.fsum(self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)

    def __getitem__(self, j: int) -> float:
        return self.gaps[j]


@dataclass(frozen=True)
class EnergySpectrum:
    """Strictly increasing, non-degenerate energy levels (hbar = k_B = 1)."""

    levels: tuple[float, ...]

    def __post_init__(self) -> None:
        levels = tuple(float(e) for e in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise ValueError(f"a spectrum needs at least 2 levels, got {len(levels)}")
        if not all(math.isfinite(e) for e in levels):
            raise ValueError(f"levels must be finite, got {levels!r}")
        scale = max(abs(e) for e in levels)
        for j in range(len(levels) - 1):
            gap = levels[j + 1] - levels[j]
            if gap <= 0:
                raise ValueError(
                    f"levels must be strictly ascending: level {j + 1} ({levels[j + 1]!r}) "
                    f"<= level {j} ({levels[j]!r})"
                )
            if gap < DEGENERACY_TOL * scale:
                raise ValueError(f"levels {j} and {j + 1} are degenerate (gap {gap!r})")

    @classmethod
    def parse(cls, text: str) -> "EnergySpectrum":
        """Build a spectrum from an ascending comma-separated list, e.g. ``"-5,-2,5"``."""
        parts = [p.strip() for p in text.split(",")]
        if any(not p for p in parts):
            raise ValueError(f"malformed spectrum {text!r}: empty entry")
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"malformed spectrum {text!r}: entries must be decimal numbers") from None
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def shifted(self, c: float) -> "EnergySpectrum":
        return EnergySpectrum(tuple(e + c for e in self.levels))

    def gaps(self) -> GapVector:
        return gaps_of(self)

    def __str__(self) -> str:
        return ",".join(repr(e) for e in self.levels)


def gaps_of(spectrum: EnergySpectrum) -> GapVector:
    lv = spectrum.levels
    return GapVector(tuple(lv[j + 1] - lv[j] for j in range(len(lv) - 1)))


def from_gaps(ground: float, gaps: Iterable[float]) -> EnergySpectrum:
    """Inverse of :func:`gaps_of` up to rounding: stack ``gaps`` on top of ``ground``."""
    levels = [float(ground)]
    for g in gaps:
        levels.append(levels[-1] + g)
    return EnergySpectrum(tuple(levels))


class Family(enum.Enum):
    """Three-level toy spectra used in the figure presets.

    FIG_A is ``(-B, -J, B)``; FIG_B and FIG_C are both ``(-B, B, J)``. The last
    two differ only in which parameter is modulated across the cycle: B for
    FIG_B, J for FIG_C.
    """

    FIG_A = "figA"
    FIG_B = "figB"
    FIG_C = "figC"


def build_family(family: Family | str, B: float, J: float) -> EnergySpectrum:
    family = Family(family)
    if family is Family.FIG_A:
        if not B > J:
            raise ValueError(f"{family.value} needs B > J, got B={B!r}, J={J!r}")
        if not J > -B:
            raise ValueError(f"{family.value} needs J > -B, got B={B!r}, J={J!r}")
        return EnergySpectrum((-B, -J, B))
    if not B > 0:
        raise ValueError(f"{family.value} needs B > 0, got B={B!r}")
    if not J > B:
        raise ValueError(f"{family.value} needs J > B, got B={B!r}, J={J!r}")
    return EnergySpectrum((-B, B, J))
