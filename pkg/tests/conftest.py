"""Shared strategies and an independent floating-point oracle.

The oracle evaluates power-basis coordinates directly at 2cos(k pi/2^(n+1))
with mpmath's real (non-interval) arithmetic, so it shares no code with the
reduction tables or the certified embeddings.
"""

import pytest
from hypothesis import strategies as st
from mpmath import mp

from z2pcf.tower_ring import RingElem, degree


def conj_value(x: RingElem, j: int = 0, bits: int = 256):
    """sigma^j(x) as an mp.mpf, straight from the coefficient vector."""
    n = x.level
    with mp.workprec(bits):
        if n == 0:
            return mp.mpf(x.coeffs[0]) / x.den
        k = pow(3, j, 1 << (n + 2))
        r = 2 * mp.cos(mp.pi * k / 2 ** (n + 1))
        return sum(mp.mpf(c) * r ** i for i, c in enumerate(x.coeffs)) / x.den


def elems(level: int, bound: int = 6, integral: bool = True):
    coeffs = st.lists(st.integers(-bound, bound), min_size=degree(level), max_size=degree(level))
    if integral:
        return coeffs.map(lambda cs: RingElem(level, cs))
    return st.tuples(coeffs, st.integers(1, 5)).map(lambda t: RingElem(level, t[0], t[1]))


def nonzero_elems(level: int, bound: int = 6):
    return elems(level, bound).filter(lambda x: not x.is_zero())


levels = st.integers(1, 3)


@pytest.fixture
def oracle():
    return conj_value


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert."""
    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
