"""Randomised checks of the operating-condition theorems.

Every trial draws its cycle from a random stream keyed by ``(seed, trial)``,
so a scoreboard does not depend on how trials are split across workers.
"""

from __future__ import annotations

import json
from bisect import bisect
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import accumulate
from typing import Optional

import numpy as np

from .analysis import (
    HEAT_TOL,
    IDENTITY_RTOL,
    Mode,
    check_case_a_consequences,
    check_case_b_consequences,
    check_case_c_feasibility,
    efficiency_bounds,
    operating_mode,
)
from .majorization import (
    PROBABILITY_TOL,
    GapLabel,
    ProbabilityCase,
    classify_gap_condition,
    classify_probability_case,
    majorizes,
)
from .spectra import EnergySpectrum, from_gaps
from .thermo import OttoCycle, heats_gap_form

MAX_SAMPLES = 3


@dataclass(frozen=True)
class SamplerConfig:
    """Where random cycles are drawn from.

    A ``rescaled_fraction`` of trials builds the cold gaps from the hot ones,
    each kept exactly, shrunk or expanded with equal odds; the rest draw the
    cold levels independently. Keeping gaps exactly is what makes the
    fixed-gap statements testable at all.
    """

    n_levels: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    n_weights: tuple[float, ...] = (0.05, 0.7, 0.05, 0.05, 0.05, 0.05, 0.05)
    level_range: tuple[float, float] = (-10.0, 10.0)
    temperature_range: tuple[float, float] = (0.1, 10.0)
    rescaled_fraction: float = 0.5
    min_gap: float = 1e-3

    def __post_init__(self) -> None:
        if len(self.n_levels) != len(self.n_weights):
            raise ValueError("n_levels and n_weights differ in length")
        if min(self.n_levels) < 2:
            raise ValueError("media need at least 2 levels")
        lo, hi = self.level_range
        if not lo < hi:
            raise ValueError(f"empty level range {self.level_range!r}")
        tlo, thi = self.temperature_range
        if not 0 < tlo < thi:
            raise ValueError(f"bad temperature range {self.temperature_range!r}")
        n_max = max(self.n_levels)
        if (hi - lo) / (n_max - 1) <= self.min_gap:
            raise ValueError("level range too narrow for min_gap")


def _rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def _levels(rng: np.random.Generator, n: int, config: SamplerConfig) -> EnergySpectrum:
    lo, hi = config.level_range
    while True:
        x = sorted(rng.uniform(lo, hi, n).tolist())
        if min(b - a for a, b in zip(x, x[1:])) >= config.min_gap:
            return EnergySpectrum(tuple(x))


def _rescaled(rng: np.random.Generator, hot: EnergySpectrum, config: SamplerConfig) -> EnergySpectrum:
    gaps = []
    for g in hot.gaps().gaps:
        kind = rng.integers(3)
        if kind == 0:
            gaps.append(g)
        elif kind == 1:
            gaps.append(max(g * rng.uniform(0.05, 1.0), config.min_gap))
        else:
            gaps.append(g * rng.uniform(1.0, 3.0))
    return from_gaps(hot.levels[0], gaps)


def sample_cycle(config: SamplerConfig, seed: int, trial: int) -> OttoCycle:
    rng = _rng(seed, trial)
    cum = list(accumulate(config.n_weights))
    n = config.n_levels[min(bisect(cum, rng.random() * cum[-1]), len(cum) - 1)]
    tlo, thi = config.temperature_range
    while True:
        t1, t2 = rng.uniform(tlo, thi, 2).tolist()
        if t1 != t2:
            break
    hot = _levels(rng, n, config)
    if rng.random() < config.rescaled_fraction:
        cold = _rescaled(rng, hot, config)
    else:
        cold = _levels(rng, n, config)
    return OttoCycle(hot, cold, max(t1, t2), min(t1, t2))


# name -> statement; table order
THEOREMS = {
    "first-law": "Q1 + Q2 = W",
    "gap-form": "gap/tail-sum heats and work equal level forms",
    "T1": "all gaps expand => W <= 0",
    "T2": "case c, no gap expands, some gap shrinks => engine",
    "T3": "engine, n=3, one gap shrinks and one expands => case c",
    "T4": "engine, n=3, case a or b => cond 1",
    "T5": "P < P' => Q1 >= 0 and Q2 <= 0",
    "T6": "engine, n=3, one gap fixed => case c",
    "case-a": "case (a) consequences and chain",
    "case-b": "case (b) consequences and chain",
    "case-c": "case (c) total-gap inequality, no engine under cond 4",
    "eta-bounds": "efficiency bounds by case",
}

WITNESSES = {
    "non-necessity": "engine under cond 1 without majorization (case a or b)",
    "non-sufficiency": "majorization (case c) under cond 2 or 3 without an engine",
}


@dataclass
class _Tally:
    applicable: int = 0
    violations: int = 0
    indeterminate: int = 0
    samples: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)

    def add(self, outcome: Optional[bool], trial: int, cycle: OttoCycle) -> None:
        """``outcome``: True holds, False violated, None indeterminate."""
        self.applicable += 1
        entry = {"trial": trial, **cycle.to_dict()}
        if outcome is None:
            self.indeterminate += 1
        elif outcome:
            if len(self.samples) < MAX_SAMPLES:
                self.samples.append(entry)
        else:
            self.violations += 1
            if len(self.counterexamples) < MAX_SAMPLES:
                self.counterexamples.append(entry)

    def merge(self, other: "_Tally") -> None:
        self.applicable += other.applicable
        self.violations += other.violations
        self.indeterminate += other.indeterminate
        self.samples = (self.samples + other.samples)[:MAX_SAMPLES]
        self.counterexamples = (self.counterexamples + other.counterexamples)[:MAX_SAMPLES]


def evaluate_trial(cycle: OttoCycle, tol: float = PROBABILITY_TOL) -> dict[str, Optional[bool]]:
    """Verdict of every applicable statement on one cycle.

    Keys missing from the result were not applicable; ``None`` means the
    deciding quantity sat inside the numerical tolerance.
    """
    out: dict[str, Optional[bool]] = {}
    outcome = cycle.outcome
    q1, q2, w = outcome.q_hot, outcome.q_cold, outcome.work_net
    scale = max(abs(q1), abs(q2), 1.0)
    out["first-law"] = abs(q1 + q2 - w) <= IDENTITY_RTOL * scale
    g = heats_gap_form(cycle)
    out["gap-form"] = all(
        abs(a - b) <= IDENTITY_RTOL * scale for a, b in zip(g, (q1, q2, w))
    )

    hot, cold = cycle.hot_state, cycle.cold_state
    mode = operating_mode(outcome)
    engine = mode is Mode.ENGINE
    resolved = abs(w) > HEAT_TOL
    case = classify_probability_case(hot, cold, tol)
    cond = classify_gap_condition(cycle.hot_gaps, cycle.cold_gaps)
    n = cycle.n

    if cond.expanding == len(cond.changes):
        out["T1"] = w <= HEAT_TOL
    if case is ProbabilityCase.C and cond.expanding == 0 and cond.shrinking > 0:
        out["T2"] = engine if resolved else None
    if majorizes(cold, hot):
        out["T5"] = q1 >= -HEAT_TOL and q2 <= HEAT_TOL

    witnesses = []
    if n == 3:
        label = cond.label
        boundary = case is ProbabilityCase.BOUNDARY
        if engine and label in (GapLabel.COND2, GapLabel.COND3):
            out["T3"] = None if boundary else case is ProbabilityCase.C
        if engine and case in (ProbabilityCase.A, ProbabilityCase.B):
            out["T4"] = label is GapLabel.COND1
        if engine and label in (GapLabel.FIXED_LOWER, GapLabel.FIXED_UPPER):
            out["T6"] = None if boundary else case is ProbabilityCase.C
        for name, checker in (
            ("case-a", check_case_a_consequences),
            ("case-b", check_case_b_consequences),
            ("case-c", check_case_c_feasibility),
        ):
            report = checker(cycle, tol)
            if report.applicable:
                out[name] = report.ok
        bounds = efficiency_bounds(cycle, tol)
        if bounds.applicable:
            out["eta-bounds"] = bounds.report.ok
        if engine and label is GapLabel.COND1 and case in (ProbabilityCase.A, ProbabilityCase.B):
            witnesses.append("non-necessity")
        if (
            resolved
            and not engine
            and case is ProbabilityCase.C
            and label in (GapLabel.COND2, GapLabel.COND3)
        ):
            witnesses.append("non-sufficiency")
    out["_witnesses"] = witnesses  # type: ignore[assignment]
    return out


def _run_chunk(args) -> tuple[dict, dict]:
    config, seed, start, stop, tol = args
    theorems = {name: _Tally() for name in THEOREMS}
    witnesses = {name: _Tally() for name in WITNESSES}
    for trial in range(start, stop):
        cycle = sample_cycle(config, seed, trial)
        verdicts = evaluate_trial(cycle, tol)
        for name in verdicts.pop("_witnesses"):
            witnesses[name].add(True, trial, cycle)
        for name, verdict in verdicts.items():
            theorems[name].add(verdict, trial, cycle)
    return theorems, witnesses


@dataclass
class Scoreboard:
    seed: int
    trials: int
    config: SamplerConfig
    theorems: dict[str, _Tally]
    witnesses: dict[str, _Tally]

    @property
    def violations(self) -> int:
        return sum(t.violations for t in self.theorems.values())

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def first_counterexample(self) -> Optional[tuple[str, dict]]:
        for name, t in self.theorems.items():
            if t.counterexamples:
                return name, t.counterexamples[0]
        return None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "config": asdict(self.config),
            "theorems": [
                {
                    "name": name,
                    "statement": THEOREMS[name],
                    "trials": self.trials,
                    "applicable": t.applicable,
                    "violations": t.violations,
                    "indeterminate": t.indeterminate,
                    "samples": t.samples,
                    "counterexamples": t.counterexamples,
                }
                for name, t in self.theorems.items()
            ],
            "witnesses": [
                {
                    "name": name,
                    "statement": WITNESSES[name],
                    "count": t.applicable,
                    "samples": t.samples,
                }
                for name, t in self.witnesses.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render(self) -> str:
        lines = [
            f"seed {self.seed}, {self.trials} trials",
            f"{'theorem':<12} {'applicable':>10} {'violations':>10} {'indeterminate':>13}  statement",
        ]
        for name, t in self.theorems.items():
            lines.append(
                f"{name:<12} {t.applicable:>10} {t.violations:>10} {t.indeterminate:>13}  {THEOREMS[name]}"
            )
        lines.append(f"{'witness':<12} {'count':>10}")
        for name, t in self.witnesses.items():
            lines.append(f"{name:<12} {t.applicable:>10}  {WITNESSES[name]}")
        lines.append("PASS" if self.passed else f"FAIL: {self.violations} violations")
        return "\n".join(lines) + "\n"


def verify_theorems(
    config: SamplerConfig = SamplerConfig(),
    trials: int = 100_000,
    seed: int = 42,
    tol: float = PROBABILITY_TOL,
    workers: int = 1,
) -> Scoreboard:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    workers = max(1, min(workers, trials))
    bounds = np.linspace(0, trials, workers * 4 + 1 if workers > 1 else 2).astype(int)
    chunks = [
        (config, seed, int(a), int(b), tol) for a, b in zip(bounds[:-1], bounds[1:]) if b > a
    ]
    if workers == 1:
        parts = map(_run_chunk, chunks)
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    theorems = {name: _Tally() for name in THEOREMS}
    witnesses = {name: _Tally() for name in WITNESSES}
    for th, wi in parts:
        for name, t in th.items():
            theorems[name].merge(t)
        for name, t in wi.items():
            witnesses[name].merge(t)
    return Scoreboard(seed, trials, config, theorems, witnesses)
