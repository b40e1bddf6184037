"""Periodic continued fractions over Z[X_{n-1}] aimed at X_n.

A PCF is stored as a preperiod and a period of level-(n-1) ring elements.
Convergents come from products of elementary matrices [[c, 1], [1, 0]], and
the E-matrix of a PCF decides whether its coefficients lie on the variety of
continued fractions fixing X_n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Sequence

from mpmath import iv

from .galois_embed import embed, sign_of
from .intervals import decide, format_interval, sign
from .tower_ring import RingElem, parse_elem


class DivergentError(ValueError):
    """The PCF does not pass the convergence checks."""


class UnsupportedShapeError(ValueError):
    """(N, l) outside the shapes handled here."""


# ---------------------------------------------------------------------------
# 2x2 matrices over one layer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    a: RingElem
    b: RingElem
    c: RingElem
    d: RingElem

    @classmethod
    def identity(cls, level: int) -> "Mat2":
        one, zero = RingElem.const(1, level), RingElem.const(0, level)
        return cls(one, zero, zero, one)

    @classmethod
    def elementary(cls, c: RingElem) -> "Mat2":
        one, zero = RingElem.const(1, c.level), RingElem.const(0, c.level)
        return cls(c, one, one, zero)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def times_elementary(self, c: RingElem) -> "Mat2":
        # M @ [[c,1],[1,0]] without the zero multiplications
        return Mat2(self.a * c + self.b, self.a, self.c * c + self.d, self.c)

    def det(self) -> RingElem:
        return self.a * self.d - self.b * self.c

    def trace(self) -> RingElem:
        return self.a + self.d

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def M(coeffs: Sequence[RingElem]) -> Mat2:
    """Product of elementary matrices [[c_i, 1], [1, 0]]."""
    if not coeffs:
        raise ValueError("empty continued fraction")
    out = Mat2.elementary(coeffs[0])
    for c in coeffs[1:]:
        out = out.times_elementary(c)
    return out


# ---------------------------------------------------------------------------
# PCF
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PCF:
    """[c_0, ..., c_{N-1}, bar(p_0, ..., p_{l-1})] with coefficients at ``level``."""

    level: int
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        for c in (*self.preperiod, *self.period):
            if not isinstance(c, RingElem) or c.level != self.level:
                raise ValueError(f"coefficient {c!r} is not a level-{self.level} element")
            if not c.is_integral:
                raise ValueError(f"coefficient {c.to_text()} is not integral")

    @classmethod
    def of(cls, level: int, preperiod: Sequence, period: Sequence) -> "PCF":
        """Build from RingElems or plain integers."""
        def conv(c):
            return c if isinstance(c, RingElem) else RingElem.const(c, level)
        return cls(level, tuple(conv(c) for c in preperiod), tuple(conv(c) for c in period))

    @property
    def target_level(self) -> int:
        return self.level + 1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.preperiod), len(self.period)

    def coefficients(self) -> Iterator[RingElem]:
        yield from self.preperiod
        while True:
            yield from self.period

    def coefficient(self, i: int) -> RingElem:
        N, ell = self.shape
        return self.preperiod[i] if i < N else self.period[(i - N) % ell]

    def to_text(self) -> str:
        pre = ", ".join(c.to_text() for c in self.preperiod)
        per = ", ".join(c.to_text() for c in self.period)
        return f"[{pre} | {per}]" if pre else f"[| {per}]"

    def pretty(self) -> str:
        per = "bar(" + ", ".join(str(c) for c in self.period) + ")"
        if self.preperiod:
            return "[" + ", ".join(str(c) for c in self.preperiod) + ", " + per + "]"
        return "[" + per + "]"

    __str__ = pretty


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


_BAR_RE = re.compile(r"^\s*\[(.*)\]\s*$", re.S)


def parse_pcf(text: str, level: int) -> PCF:
    """Parse ``[c0, ..., cN-1 | p0, ..., pl-1]`` with coefficients at ``level``.

    Coefficients are bare integers/rationals or ``L<m>:[...]`` with m <= level.
    """
    m = _BAR_RE.match(text)
    if m is None:
        raise ValueError(f"PCF text must be bracketed: {text!r}")
    halves = _split_top_level(m.group(1), "|")
    if len(halves) != 2:
        raise ValueError(f"PCF text needs exactly one '|' separating preperiod and period: {text!r}")

    def elems(chunk: str) -> list[RingElem]:
        toks = [t for t in _split_top_level(chunk, ",")]
        if len(toks) == 1 and not toks[0].strip():
            return []
        out = []
        for tok in toks:
            if not tok.strip():
                raise ValueError(f"empty coefficient in {text!r}")
            out.append(parse_elem(tok, level))
        return out

    pre, per = elems(halves[0]), elems(halves[1])
    if not per:
        raise ValueError(f"empty period in {text!r}")
    return PCF(level, tuple(pre), tuple(per))


# ---------------------------------------------------------------------------
# convergents and E-matrices
# ---------------------------------------------------------------------------

def convergents(pcf: PCF, k: int) -> tuple[RingElem, RingElem, RingElem, RingElem]:
    """(p_k, q_k, p_{k-1}, q_{k-1}) from the first k+1 coefficients."""
    if k < 0:
        raise ValueError("k must be non-negative")
    m = M(list(islice(pcf.coefficients(), k + 1)))
    return m.a, m.c, m.b, m.d


def e_matrix(pcf: PCF) -> Mat2:
    """M(period) for N = 0; M([y, period..., 0, -y, 0]) for N = 1."""
    N, _ = pcf.shape
    if N == 0:
        return M(pcf.period)
    if N == 1:
        y = pcf.preperiod[0]
        zero = RingElem.const(0, pcf.level)
        return M([y, *pcf.period, zero, -y, zero])
    raise UnsupportedShapeError(f"E-matrix for preperiod length {N} is not supported")


def x_squared(level: int) -> RingElem:
    """X_{level+1}^2 = 2 + X_level, at ``level``."""
    return RingElem.gen(level) + 2


def variety_member(pcf: PCF) -> bool:
    """E_22 == E_11 and E_12 == X_n^2 E_21, exactly."""
    E = e_matrix(pcf)
    return E.d == E.a and E.b == x_squared(pcf.level) * E.c


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceReport:
    converges: bool
    reason: str | None = None

    def __bool__(self):
        return self.converges

    def __str__(self):
        return "converges" if self.converges else f"fails({self.reason})"


def _rotations(seq: Sequence) -> list[list]:
    return [list(seq[i:]) + list(seq[:i]) for i in range(len(seq))]


def convergence_check(pcf: PCF, precision: int | None = None) -> ConvergenceReport:
    """Three checks for l in {2, 3}, N in {0, 1}.

    1. E != (sqrt(-1))^l I;
    2. the 2-1 entry of M(rotation) is nonzero for every rotation of the period;
    3. (-1)^l Tr(E)^2 >= 4 for l = 2, and < 0 for l = 3, at the standard embedding.
    """
    N, ell = pcf.shape
    if N not in (0, 1) or ell not in (2, 3):
        raise UnsupportedShapeError(f"convergence check implemented for N in {{0,1}}, l in {{2,3}}; got {(N, ell)}")
    E = e_matrix(pcf)
    lev = pcf.level
    if ell == 2:
        minus_one = RingElem.const(-1, lev)
        zero = RingElem.const(0, lev)
        if E.a == minus_one and E.d == minus_one and E.b == zero and E.c == zero:
            return ConvergenceReport(False, "E = -I")
    for rot in _rotations(pcf.period):
        if M(rot).c.is_zero():
            return ConvergenceReport(False, f"M({[str(c) for c in rot]})_21 = 0")
    tr = E.trace()
    if ell == 2:
        gap = tr * tr - 4
        if not gap.is_zero() and sign_of(gap, 0, precision) < 0:
            return ConvergenceReport(False, "Tr(E)^2 < 4")
    else:
        if tr.is_zero():
            return ConvergenceReport(False, "Tr(E) = 0")
    return ConvergenceReport(True)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PCFValue:
    """Limit of a convergent PCF: exact +-X_n when E has the fixing shape."""

    target_level: int
    numeric: object
    sign: int | None = None

    @property
    def is_exact(self) -> bool:
        return self.sign is not None

    @property
    def exact(self) -> RingElem | None:
        if self.sign is None:
            return None
        return RingElem.gen(self.target_level) * self.sign

    def __str__(self):
        if self.sign is not None:
            return f"{'+' if self.sign > 0 else '-'}X_{self.target_level}"
        return format_interval(self.numeric)


def _numeric_fixed_point(pcf: PCF, precision: int | None):
    """Attracting fixed point of the period map, pushed through the preperiod."""
    P = M(pcf.period)
    pre = M(pcf.preperiod) if pcf.preperiod else None

    def probe(bits):
        a, b, c, d = (embed(x, 0, bits) for x in (P.a, P.b, P.c, P.d))
        tr = a + d
        disc = tr * tr - 4 * (a * d - b * c)
        if disc.b < 0:
            return None
        root = iv.sqrt(iv.mpf([max(disc.a, 0), disc.b]))
        s = sign(tr)
        if s is None:
            return None
        lam = (tr + s * root) / 2
        if sign(c) is None:
            return None
        z = (lam - d) / c
        if pre is not None:
            pa, pb, pc, pd = (embed(x, 0, bits) for x in (pre.a, pre.b, pre.c, pre.d))
            den = pc * z + pd
            if sign(den) is None:
                return None
            z = (pa * z + pb) / den
        return z

    return decide(probe, f"fixed point of {pcf.to_text()}", precision)


def evaluate(pcf: PCF, precision: int | None = None) -> PCFValue:
    """Value of a convergent PCF.

    When E = [[p, X_n^2 q], [q, p]] the limit is sgn(p q) X_n exactly, the sign
    taken at the standard embedding.  Otherwise a certified numeric fixed point
    of the dominant eigenvector is returned.
    """
    report = convergence_check(pcf, precision)
    if not report:
        raise DivergentError(f"{pcf.to_text()}: {report.reason}")
    n = pcf.target_level
    E = e_matrix(pcf)
    if E.a == E.d and E.b == x_squared(pcf.level) * E.c and not E.c.is_zero() and not E.a.is_zero():
        s = sign_of(E.a * E.c, 0, precision)
        return PCFValue(n, embed(RingElem.gen(n), 0, precision) * s, s)
    return PCFValue(n, _numeric_fixed_point(pcf, precision))


def truncated_value(pcf: PCF, periods: int, precision: int | None = None):
    """Certified value of the finite CF using the preperiod plus ``periods`` full periods."""
    N, ell = pcf.shape
    k = N + periods * ell - 1
    p, q, _, _ = convergents(pcf, k)
    if q.is_zero():
        raise ZeroDivisionError(f"q_{k} = 0")

    def probe(bits):
        qv = embed(q, 0, bits)
        if sign(qv) is None:
            return None
        return embed(p, 0, bits) / qv

    return decide(probe, f"p_{k}/q_{k}", precision)


# ---------------------------------------------------------------------------
# Pell identities and the fixing-matrix shape
# ---------------------------------------------------------------------------

def pell_identity_check(pcf: PCF) -> bool:
    """p_{l-1}^2 - X_n^2 q_{l-1}^2 == (-1)^l for (0, l)- and (1, l)-type PCFs."""
    N, ell = pcf.shape
    if N not in (0, 1):
        raise UnsupportedShapeError(f"Pell identity stated for N in {{0,1}}; got N={N}")
    p, q, _, _ = convergents(pcf, ell - 1)
    return p * p - x_squared(pcf.level) * q * q == (-1) ** ell


def fixing_matrix(pcf: PCF) -> Mat2:
    """Matrix A with A X_n = X_n read off the expansion.

    (1, l): M(a_0, ..., a_l) [[0, 1], [1, -a_0]];  (0, l): M(a_0, ..., a_{l-1}).
    """
    N, ell = pcf.shape
    if N == 0:
        return M(pcf.period)
    if N == 1:
        a0 = pcf.preperiod[0]
        one = RingElem.const(1, pcf.level)
        zero = RingElem.const(0, pcf.level)
        return M([a0, *pcf.period]) @ Mat2(zero, one, one, -a0)
    raise UnsupportedShapeError(f"fixing matrix for N={N} is not supported")


def has_pell_shape(A: Mat2, level: int) -> bool:
    """A == [[p, X_n^2 q], [q, p]] (the b = 0, c = -X_n^2 case of the fixing-matrix lemma)."""
    return A.a == A.d and A.b == x_squared(level) * A.c
