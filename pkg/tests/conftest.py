import numpy as np
import pytest
from hypothesis import strategies as st

from qotto import EnergySpectrum, OttoCycle


def spectra(n, lo=-10.0, hi=10.0, min_gap=1e-2):
    gaps = st.lists(st.floats(min_gap, (hi - lo) / n), min_size=n - 1, max_size=n - 1)
    return st.tuples(st.floats(lo, 0.0), gaps).map(
        lambda g: EnergySpectrum(tuple(np.cumsum([g[0], *g[1]]).tolist()))
    )


@st.composite
def cycles(draw, n_min=2, n_max=8):
    n = draw(st.integers(n_min, n_max))
    hot = draw(spectra(n))
    cold = draw(spectra(n))
    t = draw(st.lists(st.floats(0.1, 10.0), min_size=2, max_size=2, unique=True))
    return OttoCycle(hot, cold, max(t), min(t))


def fig3_cycle(t_cold):
    return OttoCycle(EnergySpectrum((-5, -2, 5)), EnergySpectrum((-3, -2, 3)), 4.0, t_cold)


def random_cycles(count, seed, n_levels=range(2, 9)):
    """Plain random cycles for bulk checks, levels in [-10, 10], T in [0.1, 10]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.choice(list(n_levels)))
        hot = np.sort(rng.uniform(-10, 10, n))
        cold = np.sort(rng.uniform(-10, 10, n))
        if min(np.diff(hot).min(), np.diff(cold).min()) < 1e-6:
            continue
        t = np.sort(rng.uniform(0.1, 10, 2))
        if t[0] == t[1]:
            continue
        out.append(
            OttoCycle(
                EnergySpectrum(tuple(hot.tolist())),
                EnergySpectrum(tuple(cold.tolist())),
                float(t[1]),
                float(t[0]),
            )
        )
    return out


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""

    def record(number, passed, detail=""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
