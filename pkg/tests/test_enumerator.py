import csv
import io
import json

import pytest

from z2pcf.bounds import bound_excludes
from z2pcf.enumerator import (CONDITIONAL_NOTE, emit_points, enumerate_units, generator_log_determinant,
                              generators, points, round_trip_ok, verify_bounds_theorem)
from z2pcf.intervals import sign
from z2pcf.tower_ring import RingElem, parse_elem, relative_norm
from z2pcf.units import in_RE03, in_RE12


def test_counts():
    assert len(list(enumerate_units(1, 3))) == 14
    assert len(list(enumerate_units(1, 1))) == 6
    rows = list(enumerate_units(2, 0))
    assert [u.elem for _, u in rows] == [RingElem.const(1, 2), RingElem.const(-1, 2)]


def test_empty_run_has_no_members():
    recs = points(1, 0)
    assert len(recs) == 2
    assert not any(r.member12 or r.member03 for r in recs)


def test_classical_group_level1():
    root = parse_elem("L1:[1,1]")
    expected = {}
    for e in range(-8, 9):
        for sgn in (1, -1):
            expected[root ** e * sgn] = (e, sgn)
    seen = {}
    for ev, u in enumerate_units(1, 8):
        assert u.elem not in seen
        seen[u.elem] = (ev.e[0], ev.unit_sign)
    assert seen == expected


def test_level1_members():
    recs = points(1, 3)
    m12 = sorted((r.exponents.e, r.exponents.unit_sign) for r in recs if r.member12)
    assert m12 == [((2,), -1), ((2,), 1)]
    three = [r for r in recs if r.exponents.e == (2,) and r.exponents.unit_sign == 1][0]
    assert three.member12  # 3 + 2 X_1


@pytest.mark.parametrize("n,E", [(1, 6), (2, 4), (3, 2)])
def test_norm_parity_and_dedup(n, E):
    dups = []
    for ev, u in enumerate_units(n, E, dups):
        assert relative_norm(u.elem) == (1 if sum(ev.e) % 2 == 0 else -1)
    assert dups == []


def test_dedup_level2_E6():
    dups = []
    assert len(list(enumerate_units(2, 6, dups))) == 2 * 13 * 13
    assert dups == []


def test_csv_deterministic_and_shaped(tmp_path):
    a = emit_points(2, 2, "csv")
    b = emit_points(2, 2, "csv", tmp_path / "p.csv")
    assert a == b == (tmp_path / "p.csv").read_text()
    rows = list(csv.DictReader(io.StringIO(a)))
    assert list(rows[0]) == ["e_0", "e_1", "torsion", "norm_sign", "log_0", "log_1",
                             "member12", "member03", "sign_pattern"]
    assert len(rows) == 50
    assert rows[0]["e_0"] == "-2" and rows[0]["torsion"] == "1" and rows[1]["torsion"] == "-1"


def test_json_carries_assumption():
    doc = json.loads(emit_points(1, 1, "json"))
    assert doc["assumption"] == CONDITIONAL_NOTE
    assert len(doc["rows"]) == 6


def test_io_error_cites_path(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    with pytest.raises(OSError, match="missing"):
        emit_points(1, 1, "csv", bad)


def test_members_respect_bound_level2():
    for _, u in enumerate_units(2, 6):
        if u.is_torsion():
            continue
        if in_RE12(u):
            assert bound_excludes(u, "12") is False
            assert round_trip_ok(u)
        if in_RE03(u):
            assert bound_excludes(u, "03") is False
            assert round_trip_ok(u)


@pytest.mark.parametrize("n,t", [(1, "12"), (1, "03"), (2, "12"), (2, "03")])
def test_sweep(n, t):
    rep = verify_bounds_theorem(n, 6, t)
    assert rep.violations == 0 and rep.undecided == 0
    assert rep.members > 0 and rep.excluded > 0
    assert rep.as_dict()["assumption"] == CONDITIONAL_NOTE


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generator_determinant_nonzero(n):
    assert sign(generator_log_determinant(n)) is not None
    assert len(generators(n)) == 1 << (n - 1)
