"""Certified real intervals (mpmath ``iv``) and adaptive precision control.

Every numeric decision in the package (signs, distance comparisons, bound
inequalities) goes through :func:`decide`, which doubles the working precision
until a separating interval is found or the configured maximum is reached.
"""

from __future__ import annotations

import contextlib
import os
from typing import Callable, TypeVar

from mpmath import iv, mp

DEFAULT_PRECISION = 128
MAX_PRECISION = 4096

T = TypeVar("T")


class UndecidedError(ArithmeticError):
    """A comparison stayed ambiguous up to the maximum precision."""

    def __init__(self, what: str, precision: int):
        super().__init__(f"undecided at {precision} bits: {what}")
        self.what = what
        self.precision = precision


_override: int | None = None


def set_default_precision(bits: int | None) -> None:
    """Process-wide default; takes priority over ``Z2PCF_PRECISION``.  None clears it."""
    global _override
    if bits is not None and not 32 <= bits <= MAX_PRECISION:
        raise ValueError(f"precision {bits} outside [32, {MAX_PRECISION}]")
    _override = bits


def default_precision() -> int:
    """Default working precision; ``Z2PCF_PRECISION`` overrides the built-in 128 bits."""
    if _override is not None:
        return _override
    env = os.environ.get("Z2PCF_PRECISION")
    if env:
        bits = int(env)
        if not 32 <= bits <= MAX_PRECISION:
            raise ValueError(f"Z2PCF_PRECISION={bits} outside [32, {MAX_PRECISION}]")
        return bits
    return DEFAULT_PRECISION


@contextlib.contextmanager
def workprec(bits: int):
    """Temporarily set the interval context precision (not thread-safe; mpmath is global)."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def width(x) -> "iv.mpf":
    return x.b - x.a


def sign(x) -> int | None:
    """+1 / -1 when the interval excludes zero, None otherwise."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    return None


def precisions(start: int | None = None, maximum: int = MAX_PRECISION):
    bits = start or default_precision()
    while True:
        yield min(bits, maximum)
        if bits >= maximum:
            return
        bits *= 2


def decide(probe: Callable[[int], T | None], what: str,
           precision: int | None = None, maximum: int = MAX_PRECISION) -> T:
    """Call ``probe(bits)`` at doubling precision until it returns non-None."""
    bits = None
    for bits in precisions(precision, maximum):
        with workprec(bits):
            out = probe(bits)
        if out is not None:
            return out
    raise UndecidedError(what, bits or maximum)


def lower(x):
    """Exact lower endpoint as an ``mp.mpf``."""
    return mp.make_mpf(x._mpi_[0])


def upper(x):
    return mp.make_mpf(x._mpi_[1])


def midpoint_str(x, digits: int = 17) -> str:
    with mp.workprec(max(iv.prec, 64)):
        return mp.nstr((lower(x) + upper(x)) / 2, digits, strip_zeros=False)


def format_interval(x, digits: int = 17) -> str:
    """``midpoint ± radius`` with ``digits`` significant digits."""
    with mp.workprec(max(iv.prec, 64)):
        lo, hi = lower(x), upper(x)
        return f"{mp.nstr((lo + hi) / 2, digits, strip_zeros=False)} ± {mp.nstr((hi - lo) / 2, 3)}"


def to_float(x) -> float:
    with mp.workprec(64):
        return float((lower(x) + upper(x)) / 2)
