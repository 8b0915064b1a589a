"""Operating modes, efficiency bounds and the gap/probability inequality checks.

Each checker returns a :class:`CheckReport`. A check whose conclusion needs
positive work is flagged ``requires_engine``; it is still evaluated on other
points, but only counts as a failure when the cycle runs as an engine.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .majorization import (
    GAP_TOL,
    PROBABILITY_TOL,
    GapCondition,
    GapLabel,
    Majorization,
    ProbabilityCase,
    classify_gap_condition,
    classify_probability_case,
    majorization_verdict,
)
from .thermo import CycleOutcome, OttoCycle, cycle_outcome

HEAT_TOL = 1e-12
IDENTITY_RTOL = 1e-12


class Mode(enum.Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    HEATER = "heater"
    ACCELERATOR = "accelerator"
    IDLE = "idle"


def operating_mode(outcome: CycleOutcome, tol: float = HEAT_TOL) -> Mode:
    """Classify by the sign pattern of ``(Q_hot, Q_cold, work_net)``.

    For Gibbs states the second law forces ``Q_hot > 0 > Q_cold`` whenever
    ``work_net > 0``, so the tests below are exhaustive in this order.
    Accelerator covers heat flowing hot to cold with ``work_net <= 0``,
    including pure conduction between identical spectra.
    """
    q1, q2, w = outcome.q_hot, outcome.q_cold, outcome.work_net
    if max(abs(q1), abs(q2), abs(w)) <= tol:
        return Mode.IDLE
    if w > tol:
        return Mode.ENGINE
    if q1 > tol:
        return Mode.ACCELERATOR
    if q2 > tol:
        return Mode.REFRIGERATOR
    return Mode.HEATER


def gap_shrink_fractions(cycle: OttoCycle) -> tuple[float, ...]:
    """``xi_j = (w_j - w_j') / w_j``; the efficiency of a two-level cycle."""
    return tuple(
        (w - wc) / w for w, wc in zip(cycle.hot_gaps.gaps, cycle.cold_gaps.gaps)
    )


@dataclass(frozen=True)
class Check:
    """One strict inequality ``lhs > rhs``; ``passed is None`` marks a skipped link."""

    name: str
    passed: Optional[bool]
    slack: Optional[float] = None
    requires_engine: bool = False
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.passed is None


def _greater(name: str, lhs: float, rhs: float, requires_engine: bool = False) -> Check:
    return Check(name, lhs > rhs, lhs - rhs, requires_engine)


def _skip(name: str, reason: str, requires_engine: bool = False) -> Check:
    return Check(name, None, None, requires_engine, reason)


@dataclass(frozen=True)
class CheckReport:
    applicable: bool
    engine: bool = False
    checks: tuple[Check, ...] = ()
    reason: str = ""

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(
            c
            for c in self.checks
            if c.passed is False and (self.engine or not c.requires_engine)
        )

    @property
    def ok(self) -> bool:
        return not self.failures


def _not_applicable(reason: str) -> CheckReport:
    return CheckReport(applicable=False, reason=reason)


class _Ratios:
    """Gap and population-shift ratios of a three-level cycle."""

    def __init__(self, cycle: OttoCycle, tol: float):
        self.tol = tol
        (self.w1, self.w2), (self.v1, self.v2) = cycle.hot_gaps.gaps, cycle.cold_gaps.gaps
        p, pc = cycle.hot_state.probabilities, cycle.cold_state.probabilities
        self.dp1 = p[0] - pc[0]
        self.dp3 = p[2] - pc[2]
        self.t1, self.t2 = cycle.t_hot, cycle.t_cold
        self.hot = self.w2 / self.w1
        self.cold = self.v2 / self.v1
        self.d1 = self.w1 - self.v1
        self.d2 = self.w2 - self.v2
        self.diff = self.d2 / self.d1 if abs(self.d1) > tol * max(self.w1, self.v1) else None
        self.r = self.dp1 / self.dp3 if abs(self.dp3) > tol else None

    def link(self, name: str, lhs: Optional[float], rhs: Optional[float], requires_engine=False):
        if lhs is None or rhs is None:
            return _skip(name, "denominator within tolerance of zero", requires_engine)
        return _greater(name, lhs, rhs, requires_engine)


def _pwc_ratio_checks(ratios: _Ratios) -> list[Check]:
    """Ratio forms of ``Q_hot > 0``, ``Q_cold < 0`` and ``work_net > 0``.

    Each condition reads ``gap ratio > r`` with ``r = (P1 - P1')/(P3 - P3')``
    after dividing by a denominator taken positive; a negative ``P3 - P3'``
    (or ``w1 - w1'`` for the work) reverses it.
    """
    R = ratios
    if R.r is None:
        return [
            _skip(f"{n}: ratio form", "P3 - P3' within tolerance of zero")
            for n in ("Q1>0", "Q2<0", "W>0")
        ]
    out = []
    for name, g, sign in (
        ("Q1>0", R.hot, R.dp3),
        ("Q2<0", R.cold, R.dp3),
        ("W>0", R.diff, R.dp3 * R.d1),
    ):
        if sign > 0:
            out.append(R.link(f"{name}: gap ratio > r", g, R.r))
        else:
            out.append(R.link(f"{name}: r > gap ratio", R.r, g))
    return out


def _case_a_checks(ratios: _Ratios) -> list[Check]:
    R = ratios
    return [
        _greater("w1/T1 > w1'/T2", R.w1 / R.t1, R.v1 / R.t2),
        _greater("w1 > w1'", R.w1, R.v1),
        _greater("w2'/T2 > w2/T1", R.v2 / R.t2, R.w2 / R.t1),
        _greater("w2 > w2'", R.w2, R.v2, requires_engine=True),
        _greater("w2'/w1' > w2/w1", R.cold, R.hot),
        R.link("w2/w1 > dw2/dw1", R.hot, R.diff),
        R.link("dw2/dw1 > r", R.diff, R.r, requires_engine=True),
    ]


def _case_b_checks(ratios: _Ratios) -> list[Check]:
    R = ratios
    return [
        _greater("w2/T1 > w2'/T2", R.w2 / R.t1, R.v2 / R.t2),
        _greater("w2 > w2'", R.w2, R.v2),
        _greater("w1'/T2 > w1/T1", R.v1 / R.t2, R.w1 / R.t1),
        _greater("w1 > w1'", R.w1, R.v1, requires_engine=True),
        R.link("dw2/dw1 > w2/w1", R.diff, R.hot, requires_engine=True),
        _greater("w2/w1 > w2'/w1'", R.hot, R.cold),
        R.link("r > dw2/dw1", R.r, R.diff, requires_engine=True),
        R.link("r > 0", R.r, 0.0),
    ]


def _classified(cycle: OttoCycle, tol: float):
    outcome = cycle.outcome
    mode = operating_mode(outcome)
    case = classify_probability_case(cycle.hot_state, cycle.cold_state, tol)
    return outcome, mode, case


def check_case_a_consequences(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> CheckReport:
    """Population shifts of case (a) force a shrinking lower gap; with positive
    work the upper gap shrinks as well, bounded by ``T1/T2 * w2'``."""
    if cycle.n != 3:
        return _not_applicable("three-level media only")
    _, mode, case = _classified(cycle, tol)
    if case is not ProbabilityCase.A:
        return _not_applicable(f"probability case is {case.value}")
    checks = _case_a_checks(_Ratios(cycle, tol))
    return CheckReport(True, mode is Mode.ENGINE, tuple(checks))


def check_case_b_consequences(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> CheckReport:
    if cycle.n != 3:
        return _not_applicable("three-level media only")
    _, mode, case = _classified(cycle, tol)
    if case is not ProbabilityCase.B:
        return _not_applicable(f"probability case is {case.value}")
    checks = _case_b_checks(_Ratios(cycle, tol))
    return CheckReport(True, mode is Mode.ENGINE, tuple(checks))


def check_case_c_feasibility(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> CheckReport:
    if cycle.n != 3:
        return _not_applicable("three-level media only")
    _, mode, case = _classified(cycle, tol)
    if case is not ProbabilityCase.C:
        return _not_applicable(f"probability case is {case.value}")
    hot, cold = cycle.hot_gaps, cycle.cold_gaps
    cond = classify_gap_condition(hot, cold)
    checks = [
        _greater("w'/T2 > w/T1", cold.total / cycle.t_cold, hot.total / cycle.t_hot),
        Check(
            "some gap shrinks",
            cond.shrinking > 0,
            requires_engine=True,
            note=f"cond {cond.label.value}",
        ),
        Check("not cond 4", cond.label is not GapLabel.COND4, requires_engine=True),
    ]
    return CheckReport(True, mode is Mode.ENGINE, tuple(checks))


@dataclass(frozen=True)
class EfficiencyBounds:
    xi: tuple[float, ...]
    eta: Optional[float]
    relation: str = ""
    report: CheckReport = field(default_factory=lambda: _not_applicable(""))

    @property
    def applicable(self) -> bool:
        return self.report.applicable


def efficiency_bounds(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> EfficiencyBounds:
    """Bound the Otto efficiency by the fractional gap shrinks ``xi1``, ``xi2``.

    In the three-level medium ``eta`` is a weighted mean of ``xi1`` and
    ``xi2`` with weights ``(P1' - P1) w1`` and ``(P3 - P3') w2``, so case (c)
    puts it strictly between them while cases (a) and (b) push it below the
    smaller one.
    """
    xi = gap_shrink_fractions(cycle)
    outcome, mode, case = _classified(cycle, tol)
    eta = outcome.efficiency
    if mode is not Mode.ENGINE or eta is None:
        return EfficiencyBounds(xi, eta, report=_not_applicable(f"mode is {mode.value}"))
    if cycle.n != 3:
        return EfficiencyBounds(xi, eta, report=_not_applicable("three-level media only"))
    xi1, xi2 = xi
    cond = classify_gap_condition(cycle.hot_gaps, cycle.cold_gaps)
    label = cond.label

    def lt(a, b, an, bn):
        return _greater(f"{bn} > {an}", b, a)

    if case is ProbabilityCase.A:
        relation = "eta < xi2 < xi1"
        checks = [lt(eta, xi2, "eta", "xi2"), lt(xi2, xi1, "xi2", "xi1")]
    elif case is ProbabilityCase.B:
        relation = "eta < xi1 < xi2"
        checks = [lt(eta, xi1, "eta", "xi1"), lt(xi1, xi2, "xi1", "xi2")]
    elif case is ProbabilityCase.C:
        if label is GapLabel.COND1:
            R = _Ratios(cycle, tol)
            if R.hot < R.cold:
                relation = "xi2 < eta < xi1"
                checks = [lt(xi2, eta, "xi2", "eta"), lt(eta, xi1, "eta", "xi1")]
            else:
                relation = "xi1 < eta < xi2"
                checks = [lt(xi1, eta, "xi1", "eta"), lt(eta, xi2, "eta", "xi2")]
        elif label in (GapLabel.COND2, GapLabel.FIXED_UPPER):
            relation = "eta < xi1"
            checks = [lt(eta, xi1, "eta", "xi1")]
        elif label in (GapLabel.COND3, GapLabel.FIXED_LOWER):
            relation = "eta < xi2"
            checks = [lt(eta, xi2, "eta", "xi2")]
        else:
            return EfficiencyBounds(
                xi, eta, report=_not_applicable(f"no bound for cond {label.value}")
            )
    else:
        return EfficiencyBounds(
            xi, eta, report=_not_applicable(f"probability case is {case.value}")
        )
    report = CheckReport(True, True, tuple(checks))
    return EfficiencyBounds(xi, eta, relation, report)


@dataclass(frozen=True)
class FixedTotalGapWork:
    applicable: bool
    work: Optional[float] = None
    work_general: Optional[float] = None
    checks: tuple[Check, ...] = ()
    reason: str = ""

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)


def fixed_total_gap_work(cycle: OttoCycle, tol: float = GAP_TOL) -> FixedTotalGapWork:
    """Work of a three-level cycle whose total gap ``w = w1 + w2`` is unchanged.

    Then ``w1 - w1' = -(w2 - w2')`` and the work collapses to
    ``(w1 - w1')(P2 - P2')``. Positive work therefore needs ``P2 > P2'`` when
    the lower gap shrinks (cond 2) and ``P2 < P2'`` when it expands (cond 3).
    """
    if cycle.n != 3:
        return FixedTotalGapWork(False, reason="three-level media only")
    hot, cold = cycle.hot_gaps, cycle.cold_gaps
    if abs(hot.total - cold.total) > tol * max(hot.total, cold.total):
        return FixedTotalGapWork(False, reason="total gap changes")
    outcome = cycle_outcome(cycle)
    dp2 = cycle.hot_state[1] - cycle.cold_state[1]
    work = (hot[0] - cold[0]) * dp2
    scale = max(abs(outcome.q_hot), abs(outcome.q_cold), 1.0)
    err = abs(work - outcome.work_net)
    checks = [
        Check("simplified work = work", err <= IDENTITY_RTOL * scale, IDENTITY_RTOL * scale - err)
    ]
    if operating_mode(outcome) is Mode.ENGINE:
        label = classify_gap_condition(hot, cold).label
        if label is GapLabel.COND2:
            checks.append(_greater("cond 2 engine: P2 > P2'", dp2, 0.0))
        elif label is GapLabel.COND3:
            checks.append(_greater("cond 3 engine: P2' > P2", -dp2, 0.0))
    return FixedTotalGapWork(True, work, outcome.work_net, tuple(checks))


@dataclass(frozen=True)
class RegimeReport:
    """Everything known about one cycle.

    ``pwc`` holds the ratio forms of the three sign conditions and merely
    describes the point; ``chain`` holds the case (a) or (b) inequality chain,
    whose failures are reported by :attr:`failures`.
    """

    cycle: OttoCycle
    outcome: CycleOutcome
    mode: Mode
    case: Optional[ProbabilityCase]
    cond: GapCondition
    majorization: Majorization
    xi: tuple[float, ...]
    bounds: EfficiencyBounds
    pwc: tuple[Check, ...] = ()
    chain: tuple[Check, ...] = ()

    @property
    def efficiency(self) -> Optional[float]:
        return self.outcome.efficiency

    @property
    def failures(self) -> tuple[Check, ...]:
        engine = self.mode is Mode.ENGINE
        own = tuple(
            c for c in self.chain
            if c.passed is False and (engine or not c.requires_engine)
        )
        return own + self.bounds.report.failures


def regime_report(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> RegimeReport:
    outcome, mode, case = _classified(cycle, tol)
    cond = classify_gap_condition(cycle.hot_gaps, cycle.cold_gaps)
    maj = majorization_verdict(cycle.hot_state, cycle.cold_state, tol)
    pwc: list[Check] = []
    chain: list[Check] = []
    if cycle.n == 3:
        ratios = _Ratios(cycle, tol)
        pwc = _pwc_ratio_checks(ratios)
        if case is ProbabilityCase.A:
            chain = _case_a_checks(ratios)
        elif case is ProbabilityCase.B:
            chain = _case_b_checks(ratios)
    return RegimeReport(
        cycle,
        outcome,
        mode,
        case,
        cond,
        maj,
        gap_shrink_fractions(cycle),
        efficiency_bounds(cycle, tol),
        tuple(pwc),
        tuple(chain),
    )
