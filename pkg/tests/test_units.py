import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z2pcf.pcf_core import PCF, convergents, evaluate, parse_pcf, pell_identity_check, variety_member
from z2pcf.tower_ring import RingElem, join, parse_elem, relative_norm
from z2pcf.units import (PreconditionError, delta, delta_pcf_closed_form, eta, eta_element,
                         eta_pcf_closed_form, in_RE03, in_RE12, pcf03_from_unit, pcf12_from_unit, pcf13,
                         pell_map, rel_unit_from, relax13, unit_from_pcf03, unit_from_pcf12, unit_one)
from z2pcf.enumerator import generators

LEVELS = range(1, 6)


def test_frozen_units():
    assert delta(1).elem == parse_elem("L1:[-3,-2]")
    assert delta(2).elem == parse_elem("L2:[1,0,-4,-2]")
    assert eta(1).elem == parse_elem("L1:[1,1]")
    assert eta(2).elem == parse_elem("L2:[-1,-2,1,1]")
    assert eta_element(0) == RingElem.const(1, 0)
    with pytest.raises(ValueError):
        eta(0)


@pytest.mark.parametrize("n", LEVELS)
def test_norms(n):
    assert relative_norm(delta(n).elem) == 1
    assert relative_norm(eta(n).elem) == -1


@pytest.mark.parametrize("n", LEVELS)
def test_delta_closed_forms(n):
    x = RingElem.gen(n - 1)
    d = delta(n)
    assert d.p == (x + 6) / (x - 2)
    assert d.q == 4 / (x - 2)
    assert pcf12_from_unit(d) == delta_pcf_closed_form(n)


@pytest.mark.parametrize("n", LEVELS)
def test_eta_expansion(n):
    pcf = pcf03_from_unit(eta(n))
    assert pcf == eta_pcf_closed_form(n)
    assert variety_member(pcf)
    assert str(evaluate(pcf)) == f"+X_{n}"


def test_eta2_expansion_frozen():
    assert pcf03_from_unit(eta(2)) == parse_pcf("[|L1:[3,-1], L1:[1,1], L1:[3,-2]]", 1)
    assert pcf03_from_unit(eta(1)) == PCF.of(0, [], [1, 1, 0])
    assert pcf12_from_unit(delta(1)) == PCF.of(0, [2], [-2, 4])


def test_classical_anchor():
    u = rel_unit_from(parse_elem("L1:[3,2]"))
    assert in_RE12(u) and not in_RE03(u)
    pcf = pcf12_from_unit(u)
    assert pcf == PCF.of(0, [1], [2, 2])
    assert str(evaluate(pcf)) == "+X_1"
    assert unit_from_pcf12(pcf).elem == u.elem


def test_non_members():
    one = unit_one(2)
    assert not in_RE12(one) and not in_RE03(one)
    assert not in_RE12(-one)
    with pytest.raises(PreconditionError):
        pcf12_from_unit(eta(2))
    with pytest.raises(PreconditionError):
        pcf03_from_unit(delta(2))
    assert rel_unit_from(parse_elem("L1:[2,1]")) is None
    with pytest.raises(PreconditionError):
        unit_from_pcf12(parse_pcf("[-2|2,-4]", 0))  # converges to -X_1


def _units(n):
    gens = generators(n)
    return st.tuples(st.lists(st.integers(-4, 4), min_size=len(gens), max_size=len(gens)),
                     st.sampled_from([1, -1])).map(lambda t: _product(gens, *t))


def _product(gens, exps, sgn):
    u = unit_one(gens[0].level)
    for g, e in zip(gens, exps):
        u = u * g ** e
    return u if sgn == 1 else -u


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(_units))
def test_units_properties(u):
    assert relative_norm(u.elem) == u.norm_sign
    sol = pell_map(u)
    assert sol.check() and sol.unit() == u.elem
    assert (u * u.inverse()).elem == 1
    if not u.is_torsion():
        assert not u.p.is_zero() and not u.q.is_zero()
    if in_RE12(u):
        pcf = pcf12_from_unit(u)
        assert pell_identity_check(pcf)
        back = unit_from_pcf12(pcf)
        assert back.elem == u.elem and pcf12_from_unit(back) == pcf
    if in_RE03(u):
        pcf = pcf03_from_unit(u)
        assert pell_identity_check(pcf)
        back = unit_from_pcf03(pcf)
        assert back.elem == u.elem and pcf03_from_unit(back) == pcf


@pytest.mark.parametrize("n", LEVELS)
def test_pcf13(n):
    pcf, sol = pcf13(n)
    assert pcf.shape == (1, 3)
    assert sol.check()
    assert sol.unit() == eta(n).elem
    p2, q2, _, _ = convergents(pcf, 2)
    assert join(p2, q2) == eta(n).elem
    assert relax13(pcf03_from_unit(eta(n))) == pcf
