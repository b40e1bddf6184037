"""Exact arithmetic in Z[X_n] and Q(X_n), X_n = 2cos(2*pi/2^(n+2)).

Elements are stored in the power basis 1, X_n, ..., X_n^(2^n - 1) as integer
numerators over one positive common denominator.  Every layer sits inside the
next through X_{n-1} = X_n^2 - 2, and every element splits uniquely as
p + X_n*q with p, q one layer down.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class LevelMismatchError(ValueError):
    """Binary operation on elements of different layers without a lift."""


class NotInSubfieldError(ValueError):
    """Raised by :func:`descend` when the element does not lie in the target layer."""


def degree(n: int) -> int:
    return 1 << n


def _check_level(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"level must be a non-negative integer, got {n!r}")


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, constant term first)
# ---------------------------------------------------------------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _compose_t2_minus_2(f: Sequence[int]) -> list[int]:
    """Return f(t^2 - 2)."""
    out = [f[-1]]
    for c in reversed(f[:-1]):
        out = _poly_mul(out, [-2, 0, 1])
        out[0] += c
    return out


def _taylor_shift(f: Sequence[int], h: int) -> list[int]:
    """Return f(t + h) for an integer polynomial f."""
    out = [0] * len(f)
    for c in reversed(f):
        # out = out*(t + h) + c, degree bounded by len(f) - 1
        for i in range(len(out) - 1, 0, -1):
            out[i] = out[i - 1] + h * out[i]
        out[0] = h * out[0] + c
    return out


@lru_cache(maxsize=None)
def minimal_poly(n: int) -> tuple[int, ...]:
    """Monic minimal polynomial f_n of X_n, coefficients constant term first.

    f_0(t) = t and f_n(t) = f_{n-1}(t^2 - 2).
    """
    _check_level(n)
    if n == 0:
        return (0, 1)
    return tuple(_compose_t2_minus_2(minimal_poly(n - 1)))


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows k - d for d <= k <= 2d - 2: power-basis coordinates of X_n^k."""
    d = degree(n)
    f = minimal_poly(n)
    row = [-c for c in f[:d]]  # X^d
    rows = [tuple(row)]
    for _ in range(d, 2 * d - 2):
        top = row[-1]
        row = [0] + row[:-1]
        if top:
            for i in range(d):
                row[i] -= top * f[i]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce(prod: list[int], n: int) -> list[int]:
    d = degree(n)
    out = prod[:d]
    out += [0] * (d - len(out))
    table = _reduction_table(n)
    for k in range(d, len(prod)):
        c = prod[k]
        if c:
            row = table[k - d]
            for i in range(d):
                out[i] += c * row[i]
    return out


# ---------------------------------------------------------------------------
# RingElem
# ---------------------------------------------------------------------------

class RingElem:
    """Element of Q(X_n) in power-basis coordinates.

    Instances are immutable and hashable.  ``coeffs`` are integer numerators
    and ``den`` the positive common denominator, kept in lowest terms.
    """

    __slots__ = ("level", "coeffs", "den", "_hash")

    def __init__(self, level: int, coeffs: Iterable[Scalar], den: int = 1):
        _check_level(level)
        vals = list(coeffs)
        d = degree(level)
        if len(vals) > d:
            raise ValueError(f"level {level} needs at most {d} coefficients, got {len(vals)}")
        vals += [0] * (d - len(vals))
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in vals):
            common = 1
            for v in vals:
                if isinstance(v, Fraction):
                    common = common * v.denominator // gcd(common, v.denominator)
            ints = [int(Fraction(v) * common) for v in vals]
            den *= common
        else:
            ints = [int(v) for v in vals]
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            ints = [-c for c in ints]
        if den != 1:
            g = den
            for c in ints:
                g = gcd(g, c)
                if g == 1:
                    break
            if g != 1:
                den //= g
                ints = [c // g for c in ints]
        self.level = level
        self.coeffs = tuple(ints)
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, level: int, coeffs: tuple[int, ...], den: int = 1) -> "RingElem":
        obj = object.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj.den = den
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, level: int) -> "RingElem":
        c = Fraction(c)
        return cls(level, [c.numerator], c.denominator)

    @classmethod
    def gen(cls, level: int) -> "RingElem":
        """X_n itself (X_0 = 0)."""
        if level == 0:
            return cls(0, [0])
        return cls(level, [0, 1])

    # predicates -----------------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0], self.den)

    def fractions(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.coeffs]

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.level != self.level:
                raise LevelMismatchError(
                    f"level {self.level} and level {other.level} operands; lift explicitly")
            return other
        if isinstance(other, (int, Fraction)):
            return RingElem.const(other, self.level)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RingElem(self.level, [a + b for a, b in zip(self.coeffs, o.coeffs)], self.den)
        return RingElem(self.level,
                        [a * o.den + b * self.den for a, b in zip(self.coeffs, o.coeffs)],
                        self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RingElem._raw(self.level, tuple(-c for c in self.coeffs), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self.level
        if n == 0:
            return RingElem(0, [self.coeffs[0] * o.coeffs[0]], self.den * o.den)
        if o.is_rational():
            c = o.coeffs[0]
            return RingElem(n, [c * a for a in self.coeffs], self.den * o.den)
        if self.is_rational():
            c = self.coeffs[0]
            return RingElem(n, [c * a for a in o.coeffs], self.den * o.den)
        prod = _poly_mul(self.coeffs, o.coeffs)
        return RingElem(n, _reduce(prod, n), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = RingElem.const(1, self.level)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_gen(self) -> "RingElem":
        """Multiply by X_n (a shift plus one reduction step)."""
        n = self.level
        if n == 0:
            return RingElem._raw(0, (0,), 1)
        return RingElem(n, _reduce([0, *self.coeffs], n), self.den)

    def inverse(self) -> "RingElem":
        """Field inverse, 1/x = tau(x) / N_{n/n-1}(x) applied down the tower."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.level
        if n == 0:
            v = Fraction(self.den, self.coeffs[0])
            return RingElem.const(v, 0)
        p, q = tower_split(self)
        rn = p * p - (q * q) * _x_sq_below(n)
        conj = _join(p, -q, n)
        return conj * lift(rn.inverse(), n)

    # comparison / hashing --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return (self.level == other.level and self.den == other.den
                    and self.coeffs == other.coeffs)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.coeffs[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # text ---------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical form ``L<n>:[c0,c1,...]`` (rationals as ``a/b``)."""
        parts = []
        for c in self.coeffs:
            f = Fraction(c, self.den)
            parts.append(str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}")
        return f"L{self.level}:[{','.join(parts)}]"

    def pretty(self) -> str:
        """Human-readable polynomial in X_n."""
        terms = []
        for k, f in enumerate(self.fractions()):
            if f == 0:
                continue
            mag = abs(f)
            if k == 0:
                body = str(mag)
            else:
                mon = f"X_{self.level}" if k == 1 else f"X_{self.level}^{k}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            terms.append(("-" if f < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return self.to_text()

    __str__ = pretty


_TEXT_RE = re.compile(r"^\s*L(\d+)\s*:\s*\[(.*)\]\s*$")


def parse_elem(text: str, level: int | None = None) -> RingElem:
    """Parse ``L2:[1,0,3,0]``; a bare rational like ``-3`` or ``1/2`` needs ``level``.

    When ``level`` is given and the text names a lower layer, the element is
    lifted; a higher layer is an error.
    """
    m = _TEXT_RE.match(text)
    if m is None:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse ring element {text.strip()!r}") from None
        if level is None:
            raise ValueError(f"bare scalar {text.strip()!r} needs an explicit level")
        return RingElem.const(value, level)
    src = int(m.group(1))
    body = m.group(2).strip()
    coeffs = []
    if body:
        for tok in body.split(","):
            try:
                coeffs.append(Fraction(tok.strip()))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad coefficient {tok.strip()!r} in {text.strip()!r}") from None
    if len(coeffs) > degree(src):
        raise ValueError(f"{text.strip()!r}: level {src} takes at most {degree(src)} coefficients")
    elem = RingElem(src, coeffs)
    if level is None or level == src:
        return elem
    if level < src:
        raise ValueError(f"{text.strip()!r} is at level {src}, above requested level {level}")
    return lift(elem, level)


# ---------------------------------------------------------------------------
# tower structure
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _x_sq_below(n: int) -> RingElem:
    """X_n^2 = 2 + X_{n-1}, as an element of level n-1."""
    return RingElem.gen(n - 1) + 2


def _join(p: RingElem, q: RingElem, n: int) -> RingElem:
    """p + X_n*q for p, q at level n-1 (no reduction needed)."""
    d = degree(n)
    if p.den != q.den:
        den = p.den * q.den // gcd(p.den, q.den)
        pc = [c * (den // p.den) for c in p.coeffs]
        qc = [c * (den // q.den) for c in q.coeffs]
    else:
        den, pc, qc = p.den, list(p.coeffs), list(q.coeffs)
    if n == 1:
        # level 0 has one coefficient and X_0 = 0, so lifting is the identity
        return RingElem(1, [pc[0], qc[0]], den)
    # substitute X_{n-1} = t^2 - 2: shift by -2 in the variable t^2
    ps = _taylor_shift(pc, -2)
    qs = _taylor_shift(qc, -2)
    out = [0] * d
    for i, c in enumerate(ps):
        out[2 * i] = c
    for i, c in enumerate(qs):
        out[2 * i + 1] = c
    return RingElem(n, out, den)


def join(p: RingElem, q: RingElem) -> RingElem:
    """Reassemble p + X_n*q from level n-1 parts."""
    if p.level != q.level:
        raise LevelMismatchError("tower parts must share a level")
    return _join(p, q, p.level + 1)


def tower_split(x: RingElem) -> tuple[RingElem, RingElem]:
    """Unique (p, q) one level down with x = p + X_n*q."""
    n = x.level
    if n == 0:
        raise ValueError("tower_split needs level >= 1")
    if n == 1:
        return RingElem(0, [x.coeffs[0]], x.den), RingElem(0, [x.coeffs[1]], x.den)
    even = x.coeffs[0::2]
    odd = x.coeffs[1::2]
    # X_n^2 = X_{n-1} + 2
    return (RingElem(n - 1, _taylor_shift(even, 2), x.den),
            RingElem(n - 1, _taylor_shift(odd, 2), x.den))


def lift(a: RingElem, to: int) -> RingElem:
    """Same field element expressed at a higher layer."""
    if to < a.level:
        raise ValueError(f"cannot lift from level {a.level} down to {to}")
    while a.level < to:
        zero = RingElem._raw(a.level, (0,) * degree(a.level), 1)
        a = _join(a, zero, a.level + 1)
    return a


def descend(a: RingElem, to: int) -> RingElem:
    """Express ``a`` at a lower layer; raises NotInSubfieldError when impossible."""
    if to > a.level:
        raise ValueError(f"cannot descend from level {a.level} up to {to}")
    orig = a
    while a.level > to:
        p, q = tower_split(a)
        if not q.is_zero():
            raise NotInSubfieldError(f"{orig.to_text()} does not lie in level {to}")
        a = p
    return a


def relative_norm(x: RingElem) -> RingElem:
    """N_{n/n-1}(x) = p^2 - X_n^2 q^2 as a level n-1 element."""
    if x.level == 0:
        raise ValueError("relative norm is undefined at level 0")
    p, q = tower_split(x)
    return p * p - (q * q) * _x_sq_below(x.level)


def absolute_norm(x: RingElem) -> Fraction | int:
    """N_n(x), obtained by composing relative norms down to Q."""
    while x.level > 0:
        x = relative_norm(x)
    v = Fraction(x.coeffs[0], x.den)
    return v.numerator if v.denominator == 1 else v


def exact_div(a: RingElem, b: RingElem) -> RingElem | None:
    """a/b if it lies in Z[X_n], else None."""
    if a.level != b.level:
        raise LevelMismatchError("exact_div operands must share a level")
    if b.is_zero():
        raise ZeroDivisionError("exact_div by zero")
    if b.is_rational() and b.den == 1:
        c = b.coeffs[0]
        if a.den == 1 and all(v % c == 0 for v in a.coeffs):
            return RingElem._raw(a.level, tuple(v // c for v in a.coeffs), 1)
        return None
    quo = a * b.inverse()
    return quo if quo.is_integral else None


def divides(b: RingElem, a: RingElem) -> bool:
    return exact_div(a, b) is not None


# ---------------------------------------------------------------------------
# 2cos(k*pi/2^(n+1))
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _chebyshev_table(n: int) -> tuple[RingElem, ...]:
    """D_k = 2cos(k*pi/2^(n+1)) for 0 <= k <= 2^(n+1), via D_k = X D_{k-1} - D_{k-2}."""
    two = RingElem.const(2, n)
    x = RingElem.gen(n)
    table = [two, x]
    for _ in range(2, (1 << (n + 1)) + 1):
        table.append(table[-1].mul_gen() - table[-2])
    return tuple(table)


def cos_element(n: int, k: int) -> RingElem:
    """Exact 2cos(k*pi/2^(n+1)) in Z[X_n], 0 <= k < 2^(n+1)."""
    _check_level(n)
    if not 0 <= k < (1 << (n + 1)):
        raise ValueError(f"k={k} outside [0, {1 << (n + 1)})")
    return _chebyshev_table(n)[k]


def cos_any(n: int, k: int) -> RingElem:
    """2cos(k*pi/2^(n+1)) for any integer k, folded by periodicity and symmetry."""
    period = 1 << (n + 2)
    k %= period
    if k > period // 2:
        k = period - k
    return _chebyshev_table(n)[k]
