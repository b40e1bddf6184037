"""Relative units of Z[X_n] and their correspondence with PCFs for X_n.

A relative unit eps = p + X_n q (p, q in Z[X_{n-1}]) has p^2 - X_n^2 q^2 = +-1.
Type (1, 2) expansions correspond to norm +1 units with q | p - 1 and
sgn(pq) = +1; type (0, 3) expansions to norm -1 units with p | q - 1,
p | X_n^2 q - 1 and sgn(pq) = +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .galois_embed import sign_of
from .pcf_core import PCF, convergence_check, convergents, evaluate, variety_member, x_squared
from .tower_ring import RingElem, cos_element, descend, exact_div, join, lift, tower_split


class PreconditionError(ValueError):
    """Input does not satisfy the membership or variety precondition."""


@dataclass(frozen=True)
class RelUnit:
    elem: RingElem
    p: RingElem
    q: RingElem
    norm_sign: int

    @property
    def level(self) -> int:
        return self.elem.level

    def is_torsion(self) -> bool:
        return self.q.is_zero()

    def __mul__(self, other: "RelUnit") -> "RelUnit":
        return _trusted(self.elem * other.elem, self.norm_sign * other.norm_sign)

    def __neg__(self) -> "RelUnit":
        return RelUnit(-self.elem, -self.p, -self.q, self.norm_sign)

    def inverse(self) -> "RelUnit":
        # eps * tau(eps) = norm_sign, so eps^-1 = norm_sign * (p - X_n q)
        s = self.norm_sign
        return RelUnit(join(self.p * s, -self.q * s), self.p * s, -self.q * s, s)

    def __pow__(self, e: int) -> "RelUnit":
        base = self if e >= 0 else self.inverse()
        result = unit_one(self.level)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __str__(self):
        return str(self.elem)


def _trusted(x: RingElem, norm_sign: int) -> RelUnit:
    p, q = tower_split(x)
    return RelUnit(x, p, q, norm_sign)


def unit_one(n: int) -> RelUnit:
    return _trusted(RingElem.const(1, n), 1)


def rel_unit_from(x: RingElem) -> RelUnit | None:
    """RelUnit when N_{n/n-1}(x) = +-1, else None."""
    if x.level < 1:
        raise ValueError("relative units live at level >= 1")
    if not x.is_integral:
        return None
    p, q = tower_split(x)
    rn = p * p - x_squared(x.level - 1) * q * q
    if rn == 1:
        s = 1
    elif rn == -1:
        s = -1
    else:
        return None
    unit = RelUnit(x, p, q, s)
    if not q.is_zero() and p.is_zero():
        raise AssertionError(f"relative unit {x.to_text()} with p = 0")
    return unit


def _is_pm_one(eps: RelUnit) -> bool:
    return eps.q.is_zero()


# ---------------------------------------------------------------------------
# type (1, 2)
# ---------------------------------------------------------------------------

def in_RE12(eps: RelUnit) -> bool:
    """eps in RE_n^+(1,2): norm +1, eps != +-1, q | p - 1, sgn(pq) = +1."""
    if eps.norm_sign != 1 or _is_pm_one(eps):
        return False
    if exact_div(eps.p - 1, eps.q) is None:
        return False
    return sign_of(eps.p * eps.q, 0) == 1


def pcf12_from_unit(eps: RelUnit) -> PCF:
    """[(p-1)/q, bar(q, 2(p-1)/q)]."""
    if not in_RE12(eps):
        raise PreconditionError(f"{eps.elem.to_text()} is not in RE^+(1,2)")
    a0 = exact_div(eps.p - 1, eps.q)
    return PCF(eps.level - 1, (a0,), (eps.q, a0 * 2))


def _require_expansion(pcf: PCF, shape: tuple[int, int]) -> None:
    if pcf.shape != shape:
        raise PreconditionError(f"expected type {shape}, got {pcf.shape}")
    if not variety_member(pcf):
        raise PreconditionError(f"{pcf.to_text()} is not on the PCF variety")
    report = convergence_check(pcf)
    if not report:
        raise PreconditionError(f"{pcf.to_text()} {report}")
    val = evaluate(pcf)
    if val.sign != 1:
        raise PreconditionError(f"{pcf.to_text()} converges to {val}, not +X_{pcf.target_level}")


def unit_from_pcf12(pcf: PCF) -> RelUnit:
    """eps = a0 a1 + 1 + X_n a1 for X_n = [a0, bar(a1, a2)]."""
    _require_expansion(pcf, (1, 2))
    a0, (a1, _) = pcf.preperiod[0], pcf.period
    eps = rel_unit_from(join(a0 * a1 + 1, a1))
    if eps is None or eps.norm_sign != 1:
        raise PreconditionError(f"{pcf.to_text()} does not yield a norm +1 unit")
    return eps


# ---------------------------------------------------------------------------
# type (0, 3)
# ---------------------------------------------------------------------------

def in_RE03(eps: RelUnit) -> bool:
    """eps in RE_n^-(0,3): norm -1, p | X_n^2 q - 1, p | q - 1, sgn(pq) = +1."""
    if eps.norm_sign != -1:
        return False
    p, q = eps.p, eps.q
    if exact_div(q - 1, p) is None:
        return False
    if exact_div(x_squared(eps.level - 1) * q - 1, p) is None:
        return False
    return sign_of(p * q, 0) == 1


def pcf03_from_unit(eps: RelUnit) -> PCF:
    """[bar((X_n^2 q - 1)/p, p, (q - 1)/p)]."""
    if not in_RE03(eps):
        raise PreconditionError(f"{eps.elem.to_text()} is not in RE^-(0,3)")
    p, q = eps.p, eps.q
    a1 = exact_div(x_squared(eps.level - 1) * q - 1, p)
    a3 = exact_div(q - 1, p)
    return PCF(eps.level - 1, (), (a1, p, a3))


def unit_from_pcf03(pcf: PCF) -> RelUnit:
    """eps = a2 + X_n (a2 a3 + 1) for X_n = [bar(a1, a2, a3)]."""
    _require_expansion(pcf, (0, 3))
    _, a2, a3 = pcf.period
    eps = rel_unit_from(join(a2, a2 * a3 + 1))
    if eps is None or eps.norm_sign != -1:
        raise PreconditionError(f"{pcf.to_text()} does not yield a norm -1 unit")
    return eps


# ---------------------------------------------------------------------------
# delta_n, eta_n
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def delta(n: int) -> RelUnit:
    """delta_n = (X_n + 2)/(X_n - 2), computed by exact division."""
    if n < 1:
        raise ValueError("delta_n needs n >= 1")
    x = RingElem.gen(n)
    d = exact_div(x + 2, x - 2)
    if d is None:
        raise AssertionError(f"(X_{n}+2)/(X_{n}-2) is not integral")
    unit = rel_unit_from(d)
    if unit is None or unit.norm_sign != 1:
        raise AssertionError(f"delta_{n} is not a norm +1 relative unit")
    return unit


@lru_cache(maxsize=None)
def eta_element(n: int) -> RingElem:
    """1 + sum_{k=1}^{2^n - 1} 2cos(k pi / 2^(n+1)); eta_0 = 1."""
    acc = RingElem.const(1, n)
    for k in range(1, 1 << n):
        acc = acc + cos_element(n, k)
    return acc


@lru_cache(maxsize=None)
def eta(n: int) -> RelUnit:
    if n < 1:
        raise ValueError("eta_n is a relative unit only for n >= 1; use eta_element(0)")
    unit = rel_unit_from(eta_element(n))
    if unit is None or unit.norm_sign != -1:
        raise AssertionError(f"eta_{n} is not a norm -1 relative unit")
    return unit


def delta_pcf_closed_form(n: int) -> PCF:
    """[2, bar(4/(X_{n-1} - 2), 4)] built directly from the closed formula."""
    xm = RingElem.gen(n - 1)
    a1 = exact_div(RingElem.const(4, n - 1), xm - 2)
    if a1 is None:
        raise AssertionError("4/(X_{n-1} - 2) is not integral")
    return PCF.of(n - 1, [2], [a1, 4])


def eta_pcf_closed_form(n: int) -> PCF:
    """The eta-expansion with each entry computed in B_n and brought down one level."""
    x = RingElem.gen(n)
    en = eta_element(n)
    em = lift(eta_element(n - 1), n)
    diff = en - em
    a1 = ((diff * x - 1) / em)
    a2 = em
    a3 = ((diff / x - 1) / em)
    return PCF(n - 1, (), tuple(descend(a, n - 1) for a in (a1, a2, a3)))


# ---------------------------------------------------------------------------
# Pell equation x^2 - X_n^2 y^2 = +-1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PellSolution:
    x: RingElem
    y: RingElem
    rhs: int

    def check(self) -> bool:
        return self.x * self.x - x_squared(self.x.level) * self.y * self.y == self.rhs

    def unit(self) -> RingElem:
        return join(self.x, self.y)


def pell_map(eps: RelUnit) -> PellSolution:
    """eps -> (p(eps), q(eps)), a solution of x^2 - X_n^2 y^2 = N(eps)."""
    sol = PellSolution(eps.p, eps.q, eps.norm_sign)
    if not sol.check():
        raise AssertionError(f"Pell identity fails for {eps.elem.to_text()}")
    return sol


def relax13(pcf: PCF) -> PCF:
    """Read [bar(a1, a2, a3)] as the non-minimal (1, 3) expansion [a1, bar(a2, a3, a1)]."""
    if pcf.shape != (0, 3):
        raise PreconditionError(f"expected a (0, 3) expansion, got type {pcf.shape}")
    a1, a2, a3 = pcf.period
    return PCF(pcf.level, (a1,), (a2, a3, a1))


def pcf13(n: int) -> tuple[PCF, PellSolution]:
    """(1, 3) relaxation of eta_n's expansion and the solution from its 2nd convergent."""
    pcf = relax13(pcf03_from_unit(eta(n)))
    p2, q2, _, _ = convergents(pcf, 2)
    return pcf, PellSolution(p2, q2, -1)
