"""Galois action on each layer and certified real embeddings.

Gal(B_n/Q) is cyclic of order 2^n, generated by sigma: X_n -> X_n^3 - 3X_n
(2cos(t) -> 2cos(3t)).  The j-th real embedding sends X_n to
2cos(3^j * pi / 2^(n+1)), the image of X_n under sigma^j.

The log and Minkowski coordinates of a level-n element are indexed by
Gal(B_{n-1}/Q); each such sigma is extended to B_n through the positive
square root sigma(X_n) = +sqrt(2 + sigma(X_{n-1})).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from mpmath import iv

from .intervals import MAX_PRECISION, UndecidedError, decide, default_precision, sign, workprec
from .tower_ring import RingElem, cos_any, join, tower_split


def galois_order(n: int) -> int:
    return 1 << n


def _angle_index(n: int, j: int) -> int:
    """k with sigma^j(X_n) = 2cos(k*pi/2^(n+1)), 0 <= k < 2^(n+2)."""
    return pow(3, j, 1 << (n + 2))


# ---------------------------------------------------------------------------
# exact Galois action
# ---------------------------------------------------------------------------

def _horner(x: RingElem, g: RingElem) -> RingElem:
    acc = RingElem.const(0, x.level)
    for c in reversed(x.coeffs):
        acc = acc * g + c
    if x.den != 1:
        acc = acc * Fraction(1, x.den)
    return acc


def sigma_image(n: int, j: int) -> RingElem:
    """sigma^j(X_n) as an element of Z[X_n]."""
    if n == 0:
        return RingElem.gen(0)
    return cos_any(n, _angle_index(n, j))


def sigma(x: RingElem, j: int = 1) -> RingElem:
    """Apply sigma^j (j taken modulo the group order)."""
    n = x.level
    if n == 0:
        return x
    j %= galois_order(n)
    if j == 0:
        return x
    return _horner(x, sigma_image(n, j))


def tau(x: RingElem) -> RingElem:
    """Generator of Gal(B_n/B_{n-1}): p + X_n q -> p - X_n q."""
    if x.level == 0:
        raise ValueError("tau is undefined at level 0")
    p, q = tower_split(x)
    return join(p, -q)


def extended_index(n: int, j: int) -> int:
    """Level-n Galois index of sigma_j in Gal(B_{n-1}/Q) extended by the positive root.

    Of the two lifts j and j + 2^(n-1), returns the one sending X_n to a
    positive real.
    """
    if n < 1:
        raise ValueError("extension needs level >= 1")
    half = 1 << (n - 1)
    if not 0 <= j < half:
        raise ValueError(f"index {j} outside Gal(B_{n - 1}/Q) of order {half}")
    k = _angle_index(n, j)
    quarter = 1 << n  # cos(k*pi/2^(n+1)) > 0 iff k mod 2^(n+2) in (-2^n, 2^n)
    if k < quarter or k > 3 * quarter:
        return j
    return j + half


# ---------------------------------------------------------------------------
# certified embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingContext:
    """Certified intervals for sigma^j(X_m), all j < 2^m and m <= level.

    Immutable; :meth:`refine` returns a fresh context at doubled precision.
    """

    level: int
    precision: int
    conjugate_values: tuple = field(repr=False)

    @classmethod
    def build(cls, level: int, precision: int | None = None) -> "EmbeddingContext":
        return _context(level, precision or default_precision())

    def root(self, m: int, j: int):
        return self.conjugate_values[m][j % galois_order(m)]

    def refine(self) -> "EmbeddingContext":
        return _context(self.level, min(2 * self.precision, MAX_PRECISION))


@lru_cache(maxsize=None)
def _root(m: int, j: int, bits: int):
    with workprec(bits):
        if m == 0:
            return iv.mpf(0)
        k = _angle_index(m, j)
        return 2 * iv.cos(iv.pi * k / (1 << (m + 1)))


@lru_cache(maxsize=None)
def _context(level: int, precision: int) -> EmbeddingContext:
    table = tuple(tuple(_root(m, j, precision + 16) for j in range(galois_order(m)))
                  for m in range(level + 1))
    return EmbeddingContext(level, precision, table)


def _eval_at(x: RingElem, r):
    acc = iv.mpf(0)
    for c in reversed(x.coeffs):
        acc = acc * r + c
    if x.den != 1:
        acc = acc / x.den
    return acc


def _embed_at_bits(x: RingElem, j: int, bits: int):
    with workprec(bits):
        return _eval_at(x, _root(x.level, j % galois_order(x.level), bits))


def embed(x: RingElem, j: int = 0, precision: int | None = None):
    """Interval of width < 2^(1 - precision) containing sigma^j(x)."""
    precision = precision or default_precision()
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    if x.is_rational():
        with workprec(max(precision, 64)):
            return iv.mpf(x.coeffs[0]) / x.den
    mag = max(abs(c) for c in x.coeffs).bit_length() + x.level + 16
    target = iv.mpf(2) ** (1 - precision)
    bits = precision + mag
    while True:
        val = _embed_at_bits(x, j, bits)
        with workprec(bits):
            if val.b - val.a < target:
                return val
        if bits > 4 * MAX_PRECISION:
            raise UndecidedError(f"width target for {x.to_text()}", bits)
        bits *= 2


def embed_extended(x: RingElem, j: int, n: int | None = None, precision: int | None = None):
    """sigma_j(x) for sigma_j in Gal(B_{n-1}/Q) extended to B_n (positive root)."""
    n = x.level if n is None else n
    if x.level == n:
        return embed(x, extended_index(n, j), precision)
    if x.level == n - 1:
        return embed(x, j, precision)
    raise ValueError(f"element at level {x.level} is not in B_{n}")


def sign_of(x: RingElem, j: int = 0, precision: int | None = None) -> int:
    """Exact sign of sigma^j(x), decided by precision doubling."""
    if x.is_zero():
        raise ValueError("sign of zero")
    if x.is_rational():
        return 1 if x.coeffs[0] > 0 else -1
    mag = max(abs(c) for c in x.coeffs).bit_length() + x.level

    def probe(bits):
        return sign(_embed_at_bits(x, j, bits + mag))

    return decide(probe, f"sign of sigma^{j}({x.to_text()})", precision)


def minkowski(x: RingElem, precision: int | None = None) -> tuple:
    """mu_n(x) for x at level n-1: all conjugates in index order."""
    return tuple(embed(x, j, precision) for j in range(galois_order(x.level)))


@dataclass(frozen=True)
class LogVector:
    """(log|sigma(eps)|)_sigma over Gal(B_{n-1}/Q), as certified intervals."""

    coords: tuple
    level: int

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def log_embedding(eps, precision: int | None = None) -> LogVector:
    """Log embedding l_n of a nonzero level-n element (RingElem or RelUnit).

    Precision is raised until each |sigma(eps)| is bounded away from zero.
    """
    x = getattr(eps, "elem", eps)
    n = x.level
    if n < 1:
        raise ValueError("log embedding needs level >= 1")
    if x.is_zero():
        raise ValueError("log of zero")
    precision = precision or default_precision()
    coords = []
    for j in range(1 << (n - 1)):
        k = extended_index(n, j)
        mag = max(abs(c) for c in x.coeffs).bit_length() + n

        def probe(bits, k=k):
            v = _embed_at_bits(x, k, bits + mag)
            if sign(v) is None:
                return None
            return iv.log(abs(v))

        coords.append(decide(probe, f"|sigma_{j}({x.to_text()})| > 0", precision))
    return LogVector(tuple(coords), n)
