from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sl21yangian.representations import CONJUGATE, DIRECT, RepParams
from sl21yangian.sampling import SamplingSpec, pairs, rep_params


def rationals(bound: int = 50, nonzero: bool = False):
    """Hypothesis strategy for small exact rationals."""
    q = st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))
    return q.filter(bool) if nonzero else q


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def direct_params(rng) -> RepParams:
    return rep_params(rng, 200, DIRECT, u=Fraction(3, 7))


@pytest.fixture
def conjugate_params(rng) -> RepParams:
    return rep_params(rng, 200, CONJUGATE, u=Fraction(-2, 5))


def sample_pairs(seed: int, count: int, kind: str = DIRECT):
    return list(pairs(SamplingSpec(seed=seed, count=count, bound=200), kind))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed", "xfailed", "xpassed"):
        for rep in terminalreporter.stats.get(key, []):
            lines += [v for k, v in getattr(rep, "user_properties", ()) if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
