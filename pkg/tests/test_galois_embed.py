import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv, mp

from conftest import conj_value, elems, nonzero_elems
from z2pcf.galois_embed import (EmbeddingContext, embed, embed_extended, extended_index, log_embedding,
                                minkowski, sigma, sigma_image, sign_of, tau)
from z2pcf.intervals import UndecidedError, decide, format_interval, lower, to_float, upper, workprec
from z2pcf.tower_ring import RingElem, absolute_norm, lift, relative_norm
from z2pcf.units import delta, eta

X = RingElem.gen


def contains(interval, value) -> bool:
    return lower(interval) <= value <= upper(interval)


def test_sigma_frozen():
    x2 = X(2)
    assert sigma(x2) == x2 ** 3 - 3 * x2
    assert sigma(lift(X(1), 2)) == -lift(X(1), 2)
    assert sigma(X(1)) == -X(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sigma_is_iterated_chebyshev(n):
    g = X(n)
    for j in range(1, 5):
        g = g ** 3 - 3 * g
        assert sigma_image(n, j) == g


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(elems(n), elems(n), st.integers(0, 15))))
def test_sigma_is_ring_automorphism(t):
    a, b, j = t
    assert sigma(a * b, j) == sigma(a, j) * sigma(b, j)
    assert sigma(a + b, j) == sigma(a, j) + sigma(b, j)
    assert sigma(sigma(a, j), 1) == sigma(a, j + 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: elems(n)))
def test_tau_is_top_power(a):
    n = a.level
    assert tau(a) == sigma(a, 1 << (n - 1))
    assert a * tau(a) == lift(relative_norm(a), n)
    assert sigma(a, 1 << n) == a


def test_embed_frozen():
    v = embed(X(2), 1)
    assert abs(to_float(v) - 0.76536686473017954) < 1e-16
    assert sign_of(eta(2).elem, 1) == -1
    assert abs(to_float(embed(eta(2).elem, 1)) + 1.4966058) < 1e-6


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(elems(n, 9), st.integers(0, 15))))
def test_embed_contains_oracle(t):
    a, j = t
    v = embed(a, j, 128)
    with workprec(128):
        assert (v.b - v.a) < iv.mpf(2) ** -127
    with mp.workprec(300):
        assert contains(v, conj_value(a, j, 300))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: nonzero_elems(n)))
def test_norm_is_product_of_embeddings(a):
    n = a.level
    with workprec(160):
        prod = iv.mpf(1)
        for j in range(1 << n):
            prod = prod * embed(a, j, 160)
        assert prod.a <= absolute_norm(a) <= prod.b


def test_extended_index_positive():
    for n in range(1, 6):
        for j in range(1 << (n - 1)):
            assert sign_of(X(n), extended_index(n, j)) == 1
            # elements of the lower layer see the same embedding either way
            y = lift(X(n - 1), n) + 3
            assert to_float(embed_extended(y, j)) == to_float(embed(X(n - 1) + 3, j))


def test_log_embedding_frozen():
    l2 = log_embedding(eta(2))
    # oracle: mpmath at 30 digits on the coefficient polynomial
    assert to_float(l2[0]) == pytest.approx(1.6148909161730953, abs=1e-15)
    assert to_float(l2[1]) == pytest.approx(0.4031997191615115, abs=1e-15)
    assert to_float(log_embedding(RingElem(1, [3, 2]))[0]) == pytest.approx(1.762747174, abs=1e-8)


def test_log_embedding_additive():
    for n in (2, 3):
        a, b = delta(n).elem, eta(n).elem
        la, lb, lab = log_embedding(a), log_embedding(b), log_embedding(a * b)
        with workprec(128):
            for x, y, z in zip(la, lb, lab):
                s = x + y
                assert s.a - 1e-30 <= z.b and z.a <= s.b + 1e-30


def test_sign_of_zero_raises():
    with pytest.raises(ValueError):
        sign_of(RingElem.const(0, 2))


def test_minkowski_and_context():
    m = minkowski(X(2))
    assert len(m) == 4
    ctx = EmbeddingContext.build(3, 64)
    finer = ctx.refine()
    assert finer.precision == 128
    with workprec(200):
        assert finer.root(3, 2).b - finer.root(3, 2).a <= ctx.root(3, 2).b - ctx.root(3, 2).a


def test_decide_raises_undecided():
    with pytest.raises(UndecidedError) as info:
        decide(lambda bits: None, "never", 64, 256)
    assert info.value.precision == 256


def test_format_interval():
    with workprec(128):
        text = format_interval(iv.mpf(2) ** iv.mpf(0.5))
    assert text.startswith("1.4142135623730950 ± ")
