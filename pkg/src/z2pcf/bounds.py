"""Exclusion bounds for the log embedding of (1,2)- and (0,3)-type units.

For a sign vector s the target mu_s(X_n) = (s_sigma sigma(X_n))_sigma is
approximated by the closest point mu_n(a_s) of the Minkowski lattice of
Z[X_{n-1}].  From a_s one gets

    (1,2):  b = 2 sigma(X_n) / |s_sigma sigma(X_n) - sigma(a_s)|
    (0,3):  b = |sigma(X_n) + 1| / |s_sigma sigma(X_n) - sigma(a_s)|

and C = log(sqrt(b^2 + 1) + |b|).  A unit whose every |log|sigma(eps)||
exceeds C_{s,sigma} (s its own sign pattern) cannot be of the given type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from mpmath import iv

from .galois_embed import _embed_at_bits, embed, embed_extended, extended_index, sign_of
from .intervals import MAX_PRECISION, decide, default_precision, precisions, to_float, workprec
from .tower_ring import RingElem, cos_any, degree
from .units import RelUnit

TYPES = ("12", "03")
MAX_CVP_LEVEL = 5


def _check_type(pcf_type: str) -> str:
    pcf_type = str(pcf_type).replace(",", "").replace("(", "").replace(")", "").strip()
    if pcf_type not in TYPES:
        raise ValueError(f"pcf type must be one of {TYPES}, got {pcf_type!r}")
    return pcf_type


def sign_vectors(n: int):
    """All of {+1, -1}^(2^(n-1)), +1 before -1 in each slot."""
    return list(itertools.product((1, -1), repeat=1 << (n - 1)))


def _check_signs(n: int, s) -> tuple[int, ...]:
    s = tuple(int(v) for v in s)
    if len(s) != 1 << (n - 1) or any(v not in (1, -1) for v in s):
        raise ValueError(f"sign vector for n={n} must have {1 << (n - 1)} entries in {{+1,-1}}")
    return s


def mu_target(n: int, s, precision: int | None = None) -> tuple:
    """(s_sigma * sigma(X_n))_sigma with the positive-root extension."""
    s = _check_signs(n, s)
    x = RingElem.gen(n)
    return tuple(sj * embed_extended(x, j, n, precision) for j, sj in enumerate(s))


# ---------------------------------------------------------------------------
# closest vector in mu_n(Z[X_{n-1}])
# ---------------------------------------------------------------------------

def _basis(m: int) -> list[RingElem]:
    """Integral basis 1, 2cos(k pi/2^(m+1)) (k = 1..d-1) of Z[X_m]; nearly orthogonal under mu."""
    d = degree(m)
    return [RingElem.const(1, m)] + [cos_any(m, k) for k in range(1, d)]


@lru_cache(maxsize=None)
def _float_embedding(m: int) -> np.ndarray:
    basis = _basis(m)
    d = len(basis)
    B = np.empty((d, d))
    for i in range(d):
        for k, b in enumerate(basis):
            B[i, k] = to_float(embed(b, i, 64))
    return B


def _element(m: int, coords) -> RingElem:
    acc = RingElem.const(0, m)
    for c, b in zip(coords, _basis(m)):
        if c:
            acc = acc + b * int(c)
    return acc


def _dist2(a: RingElem, n: int, s, bits: int):
    """Certified squared distance between mu_s(X_n) and mu_n(a)."""
    x = RingElem.gen(n)
    with workprec(bits):
        tot = iv.mpf(0)
        for j, sj in enumerate(s):
            t = sj * _embed_at_bits(x, extended_index(n, j), bits)
            diff = t - _embed_at_bits(a, j, bits)
            tot = tot + diff * diff
        return tot


def _fincke_pohst(R: np.ndarray, y: np.ndarray, bound: float) -> list[tuple[int, ...]]:
    """All integer c with |R c - y|^2 <= bound (R upper triangular)."""
    d = R.shape[0]
    out = []
    c = [0] * d

    def rec(k: int, partial: float):
        # coordinates k+1..d-1 fixed; contribution of row k
        rest = y[k] - sum(R[k, i] * c[i] for i in range(k + 1, d))
        rkk = R[k, k]
        center = rest / rkk
        span = np.sqrt(max(bound - partial, 0.0)) / abs(rkk)
        lo, hi = int(np.floor(center - span)), int(np.ceil(center + span))
        for v in range(lo, hi + 1):
            r = rest - rkk * v
            val = partial + r * r
            if val <= bound:
                c[k] = v
                if k == 0:
                    out.append(tuple(c))
                else:
                    rec(k - 1, val)
        c[k] = 0

    rec(d - 1, 0.0)
    return out


@dataclass(frozen=True)
class NearestResult:
    """Closest lattice point a_s with all co-minimizers.

    ``decided`` is False when several candidates could not be separated at the
    maximum precision; they are all listed in ``minimizers``.
    """

    n: int
    s: tuple
    a: RingElem
    minimizers: tuple
    dist2: object
    search_bound: float
    candidates: int
    precision: int

    @property
    def decided(self) -> bool:
        return len(self.minimizers) == 1


def _canonical(elems) -> RingElem:
    return min(elems, key=lambda e: e.coeffs)


def nearest_lattice(n: int, s, precision: int | None = None,
                    max_precision: int = MAX_PRECISION) -> NearestResult:
    """Closest vector to mu_s(X_n) in mu_n(Z[X_{n-1}]), certified exhaustively.

    Rounding the real coordinates gives a candidate whose certified distance
    bounds the minimum; Fincke-Pohst then lists every lattice point inside that
    ball (with a relative slack against float rounding), and the shortlist is
    compared with interval arithmetic at doubling precision.
    """
    if n < 1 or n > MAX_CVP_LEVEL:
        raise ValueError(f"nearest_lattice supports 1 <= n <= {MAX_CVP_LEVEL}")
    return _nearest(n, _check_signs(n, s), precision or default_precision(), max_precision)


@lru_cache(maxsize=None)
def _nearest(n: int, s: tuple, precision: int, max_precision: int) -> NearestResult:
    m = n - 1
    B = _float_embedding(m)
    t = np.array([sj * to_float(embed_extended(RingElem.gen(n), j, n, 64)) for j, sj in enumerate(s)])
    c0 = np.linalg.solve(B, t)
    rounded = _element(m, np.rint(c0).astype(int))
    with workprec(precision):
        d_round = _dist2(rounded, n, s, precision)
    bound = to_float(iv.mpf(d_round.b)) * (1 + 1e-9) + 1e-12
    Q, R = np.linalg.qr(B)
    y = Q.T @ t
    coords = _fincke_pohst(R, y, bound)
    cands = list({_element(m, c) for c in coords} | {rounded})

    survivors = cands
    bits = precision
    best = None
    for bits in precisions(precision, max_precision):
        dists = [_dist2(a, n, s, bits) for a in survivors]
        with workprec(bits):
            best_hi = min(d.b for d in dists)
            keep = [(a, d) for a, d in zip(survivors, dists) if d.a <= best_hi]
        survivors = [a for a, _ in keep]
        best = min(keep, key=lambda ad: ad[1].b)[1]
        if len(survivors) == 1:
            break
    a = _canonical(survivors)
    return NearestResult(n, s, a, tuple(sorted(survivors, key=lambda e: e.coeffs)), best,
                         bound, len(cands), bits)


# ---------------------------------------------------------------------------
# b and C tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEntry:
    s: tuple
    sigma: int
    a_s: RingElem
    b: object
    C: object


@dataclass(frozen=True)
class BoundTable:
    n: int
    pcf_type: str
    entries: dict

    def __getitem__(self, key) -> BoundEntry:
        return self.entries[key]

    def rows(self):
        for key in sorted(self.entries, key=lambda k: ([-v for v in k[0]], k[1])):
            yield self.entries[key]


def _b_value(pcf_type: str, x, target, a_val):
    denom = abs(target - a_val)
    if pcf_type == "12":
        return 2 * x / denom
    return abs(x + 1) / denom


def _C_of_b(b):
    return iv.log(iv.sqrt(b * b + 1) + abs(b))


def _row_at_bits(n: int, s: tuple, pcf_type: str, a_s: RingElem, bits: int) -> list:
    x = RingElem.gen(n)
    out = []
    with workprec(bits):
        for j, sj in enumerate(s):
            xv = _embed_at_bits(x, extended_index(n, j), bits)
            av = _embed_at_bits(a_s, j, bits)
            b = _b_value(pcf_type, xv, sj * xv, av)
            out.append((b, _C_of_b(b)))
    return out


def bound_row(n: int, s, pcf_type: str, precision: int | None = None) -> list[BoundEntry]:
    """Entries C_{s, sigma} for one sign vector."""
    pcf_type = _check_type(pcf_type)
    s = _check_signs(n, s)
    precision = precision or default_precision()
    a_s = nearest_lattice(n, s).a
    row = _row_at_bits(n, s, pcf_type, a_s, precision + 16)
    return [BoundEntry(s, j, a_s, b, C) for j, (b, C) in enumerate(row)]


def bound_table(n: int, pcf_type: str, precision: int | None = None) -> BoundTable:
    """Full table over all sign vectors and all sigma in Gal(B_{n-1}/Q)."""
    pcf_type = _check_type(pcf_type)
    entries = {}
    for s in sign_vectors(n):
        for e in bound_row(n, s, pcf_type, precision):
            entries[(e.s, e.sigma)] = e
    return BoundTable(n, pcf_type, entries)


def unit_sign_pattern(eps: RelUnit) -> tuple[int, ...]:
    """(sgn sigma(p q))_sigma over Gal(B_{n-1}/Q)."""
    if eps.is_torsion():
        raise ValueError("sign pattern undefined for eps = +-1")
    pq = eps.p * eps.q
    return tuple(sign_of(pq, j) for j in range(1 << (eps.level - 1)))


def bound_excludes(eps: RelUnit, pcf_type: str, precision: int | None = None,
                   max_precision: int = MAX_PRECISION) -> bool:
    """True iff |log|sigma(eps)|| > C_{s,sigma} for every sigma (s = eps's sign pattern).

    True certifies that eps is not of the given type.  Raises UndecidedError
    when some comparison cannot be separated by max_precision.
    """
    pcf_type = _check_type(pcf_type)
    if eps.is_torsion():
        raise ValueError("bound test needs eps != +-1")
    n = eps.level
    s = unit_sign_pattern(eps)
    a_s = nearest_lattice(n, s).a
    x = eps.elem
    mag = max(abs(c) for c in x.coeffs).bit_length() + n

    for j in range(1 << (n - 1)):
        k = extended_index(n, j)

        def probe(bits, j=j, k=k):
            v = _embed_at_bits(x, k, bits + mag)
            with workprec(bits):
                if v.a <= 0 <= v.b:
                    return None
                L = abs(iv.log(abs(v)))
            C = _row_at_bits(n, s, pcf_type, a_s, bits)[j][1]
            with workprec(bits):
                if L.a > C.b:
                    return "above"
                if L.b <= C.a:
                    return "below"
            return None

        verdict = decide(probe, f"|log|sigma_{j}(eps)|| vs C for {x.to_text()}",
                         precision, max_precision)
        if verdict == "below":
            return False
    return True
