import itertools
import math

import numpy as np
import pytest

from z2pcf.bounds import (bound_excludes, bound_row, bound_table, mu_target, nearest_lattice, sign_vectors,
                          unit_sign_pattern)
from z2pcf.intervals import to_float
from z2pcf.tower_ring import RingElem, exact_div, parse_elem
from z2pcf.units import delta, eta, rel_unit_from


def _roots(m):
    return np.array([2 * math.cos(pow(3, j, 1 << (m + 2)) * math.pi / 2 ** (m + 1)) if m else 0.0
                     for j in range(1 << m)])


def brute_force_cvp(n, s, radius):
    """Smallest float distance over the power-basis box |c_i| <= radius of Z[X_{n-1}]."""
    m = n - 1
    d = 1 << m
    r = _roots(m)
    V = np.vstack([r ** i for i in range(d)]).T  # V[j, i] = sigma_j(X_m)^i
    top = _roots(n)
    target = np.array([sj * abs(top[j]) for j, sj in enumerate(s)])
    best, arg = None, None
    for c in itertools.product(range(-radius, radius + 1), repeat=d):
        diff = V @ np.array(c, dtype=float) - target
        val = float(diff @ diff)
        if best is None or val < best - 1e-12:
            best, arg = val, c
    return best, arg


@pytest.mark.parametrize("n,radius", [(2, 6), (3, 3)])
def test_cvp_matches_brute_force(n, radius):
    for s in sign_vectors(n):
        res = nearest_lattice(n, s)
        bf, coords = brute_force_cvp(n, s, radius)
        assert to_float(res.dist2) == pytest.approx(bf, abs=1e-9)
        assert res.decided
        assert res.a == RingElem(n - 1, coords)


def test_cvp_frozen():
    assert nearest_lattice(1, (-1,)).a == RingElem.const(-1, 0)
    res = nearest_lattice(2, (1, -1))
    assert res.a == parse_elem("L1:[1,1]")
    assert to_float(res.dist2) == pytest.approx(0.444179, abs=1e-6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_all_ones_is_one(n):
    assert nearest_lattice(n, (1,) * (1 << (n - 1))).a == RingElem.const(1, n - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sign_flip_symmetry(n):
    t12 = bound_table(n, "12")
    for s in sign_vectors(n):
        neg = tuple(-v for v in s)
        assert nearest_lattice(n, neg).a == -nearest_lattice(n, s).a
        for j in range(len(s)):
            assert to_float(t12[(s, j)].C) == pytest.approx(to_float(t12[(neg, j)].C), rel=1e-15)


def test_closed_forms_level1():
    b12 = bound_row(1, (1,), "12")[0]
    b03 = bound_row(1, (1,), "03")[0]
    r2 = math.sqrt(2)
    assert to_float(b12.b) == pytest.approx(4 + 2 * r2, rel=1e-15)
    assert to_float(b03.b) == pytest.approx(3 + 2 * r2, rel=1e-15)
    assert to_float(b12.C) == pytest.approx(math.asinh(4 + 2 * r2), rel=1e-15)
    assert to_float(b12.C) == pytest.approx(2.6195605764530134, abs=1e-15)
    assert to_float(b03.C) == pytest.approx(2.4631737317054054, abs=1e-15)
    assert to_float(b03.C) == pytest.approx(math.asinh(3 + 2 * r2), rel=1e-15)


def test_mu_target():
    t = mu_target(2, (1, -1))
    assert to_float(t[0]) == pytest.approx(2 * math.cos(math.pi / 8))
    assert to_float(t[1]) == pytest.approx(-2 * math.cos(3 * math.pi / 8))


def test_excludes_frozen():
    assert bound_excludes(delta(1), "12") is False
    assert bound_excludes(eta(1), "03") is False
    w = rel_unit_from(parse_elem("L1:[99,70]"))
    assert bound_excludes(w, "12") is True
    assert exact_div(w.p - 1, w.q) is None


def test_sign_pattern():
    # eta_2: p q = 2 + X_1, positive under both embeddings
    assert unit_sign_pattern(eta(2)) == (1, 1)
    with pytest.raises(ValueError):
        bound_excludes(rel_unit_from(RingElem.const(-1, 2)), "12")


def test_type_validation():
    with pytest.raises(ValueError):
        bound_table(1, "13")
    with pytest.raises(ValueError):
        nearest_lattice(2, (1, 1, 1))
