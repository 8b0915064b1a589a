"""Quasi-static quantum Otto cycles with n-level working media."""

from .analysis import (
    Mode,
    RegimeReport,
    check_case_a_consequences,
    check_case_b_consequences,
    check_case_c_feasibility,
    efficiency_bounds,
    fixed_total_gap_work,
    gap_shrink_fractions,
    operating_mode,
    regime_report,
)
from .majorization import (
    GapChange,
    GapCondition,
    GapLabel,
    Majorization,
    ProbabilityCase,
    classify_gap_condition,
    classify_probability_case,
    majorization_verdict,
    majorizes,
)
from .spectra import EnergySpectrum, Family, GapVector, build_family, from_gaps, gaps_of
from .sweep import PRESETS, SweepRow, SweepSpec, preset, run_sweep
from .theorems import SamplerConfig, Scoreboard, verify_theorems
from .thermo import (
    CycleOutcome,
    OttoCycle,
    ThermalState,
    cycle_outcome,
    efficiency,
    gibbs_state,
    heats_gap_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
