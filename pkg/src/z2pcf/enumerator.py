"""Enumerate relative units from the conjugates of eta_n and classify them.

The search space is the group generated by -1 and sigma^j(eta_n),
0 <= j < 2^(n-1).  Equality with the full group of relative units is
conditional on Weber's class-number conjecture; every report says so.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Iterator

from mpmath import iv

from .bounds import bound_excludes, unit_sign_pattern
from .galois_embed import LogVector, log_embedding, sigma
from .intervals import UndecidedError, decide, midpoint_str, sign
from .tower_ring import RingElem
from .units import (RelUnit, eta, in_RE03, in_RE12, pcf03_from_unit, pcf12_from_unit, rel_unit_from,
                    unit_from_pcf03, unit_from_pcf12)

CONDITIONAL_NOTE = ("enumeration covers the group generated by -1 and the conjugates of eta_n; "
                    "it is all of RE_n only under Weber's class-number conjecture")


@dataclass(frozen=True)
class ExponentVector:
    e: tuple
    unit_sign: int = 1

    @property
    def norm_sign(self) -> int:
        return -1 if sum(self.e) % 2 else 1


@dataclass(frozen=True)
class PointRecord:
    exponents: ExponentVector
    log_coords: LogVector
    member12: bool
    member03: bool
    sign_pattern: tuple | None
    norm_sign: int

    def __post_init__(self):
        if self.member12 and self.norm_sign != 1:
            raise AssertionError("member12 requires norm +1")
        if self.member03 and self.norm_sign != -1:
            raise AssertionError("member03 requires norm -1")


def generators(n: int) -> list[RelUnit]:
    """sigma^j(eta_n) for 0 <= j < 2^(n-1), each of relative norm -1 (torsion -1 is implicit)."""
    if n < 1:
        raise ValueError("generators need n >= 1")
    gens = []
    for j in range(1 << (n - 1)):
        u = rel_unit_from(sigma(eta(n).elem, j))
        if u is None or u.norm_sign != -1:
            raise AssertionError(f"sigma^{j}(eta_{n}) is not a norm -1 relative unit")
        gens.append(u)
    return gens


def _power_table(g: RelUnit, E: int) -> dict[int, RingElem]:
    table = {0: RingElem.const(1, g.level)}
    inv = g.inverse().elem
    for e in range(1, E + 1):
        table[e] = table[e - 1] * g.elem
        table[-e] = table[-e + 1] * inv
    return table


def enumerate_units(n: int, E: int, duplicates: list | None = None
                    ) -> Iterator[tuple[ExponentVector, RelUnit]]:
    """All +-prod sigma^j(eta_n)^(e_j), |e_j| <= E, deduplicated, in deterministic order.

    Order: exponent vectors lexicographically ascending, + before -.  Each unit
    is re-verified to have relative norm (-1)^(sum e).  Merged duplicates are
    appended to ``duplicates`` as (dropped, kept) exponent vectors.
    """
    if E < 0:
        raise ValueError("exponent bound must be non-negative")
    gens = generators(n)
    tables = [_power_table(g, E) for g in gens]
    seen: dict[RingElem, ExponentVector] = {}
    rng = range(-E, E + 1)
    d = len(gens)

    def walk(depth: int, prefix: tuple, acc: RingElem):
        if depth == d:
            yield prefix, acc
            return
        for e in rng:
            yield from walk(depth + 1, prefix + (e,), acc * tables[depth][e])

    for exps, prod in walk(0, (), RingElem.const(1, n)):
        for torsion in (1, -1):
            x = prod if torsion == 1 else -prod
            ev = ExponentVector(exps, torsion)
            if x in seen:
                if duplicates is not None:
                    duplicates.append((ev, seen[x]))
                continue
            seen[x] = ev
            unit = rel_unit_from(x)
            if unit is None or unit.norm_sign != ev.norm_sign:
                raise AssertionError(f"norm parity fails at {ev}")
            yield ev, unit


def classify(ev: ExponentVector, unit: RelUnit, with_logs: bool = True,
             precision: int | None = None) -> PointRecord:
    m12 = in_RE12(unit)
    m03 = in_RE03(unit)
    pattern = None if unit.is_torsion() else unit_sign_pattern(unit)
    logs = log_embedding(unit, precision) if with_logs else None
    return PointRecord(ev, logs, m12, m03, pattern, unit.norm_sign)


def _pattern_str(pattern) -> str:
    if pattern is None:
        return ""
    return "".join("+" if v > 0 else "-" for v in pattern)


def record_row(rec: PointRecord) -> dict:
    row = {}
    for j, e in enumerate(rec.exponents.e):
        row[f"e_{j}"] = e
    row["torsion"] = rec.exponents.unit_sign
    row["norm_sign"] = rec.norm_sign
    for j, c in enumerate(rec.log_coords):
        row[f"log_{j}"] = midpoint_str(c, 17)
    row["member12"] = int(rec.member12)
    row["member03"] = int(rec.member03)
    row["sign_pattern"] = _pattern_str(rec.sign_pattern)
    return row


def points(n: int, E: int, precision: int | None = None) -> list[PointRecord]:
    return [classify(ev, u, True, precision) for ev, u in enumerate_units(n, E)]


def emit_points(n: int, E: int, fmt: str = "csv", path: str | os.PathLike | None = None,
                precision: int | None = None) -> str:
    """Serialize one row per enumerated unit; write to ``path`` when given.

    Returns the serialized text.  Output is byte-identical for fixed arguments.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    rows = [record_row(r) for r in points(n, E, precision)]
    d = 1 << (n - 1)
    columns = ([f"e_{j}" for j in range(d)] + ["torsion", "norm_sign"]
               + [f"log_{j}" for j in range(d)] + ["member12", "member03", "sign_pattern"])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        doc = {"n": n, "bound": E, "assumption": CONDITIONAL_NOTE, "columns": columns, "rows": rows}
        text = json.dumps(doc, indent=1) + "\n"
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {os.fspath(path)}: {exc.strerror}") from exc
    return text


# ---------------------------------------------------------------------------
# empirical sweep of the exclusion theorem
# ---------------------------------------------------------------------------

class BoundViolation(AssertionError):
    def __init__(self, ev: ExponentVector, pcf_type: str):
        super().__init__(f"member of type {pcf_type} excluded by the bound: exponents {ev.e}, sign {ev.unit_sign}")
        self.exponents = ev


@dataclass
class BoundsReport:
    n: int
    E: int
    pcf_type: str
    units: int = 0
    members: int = 0
    excluded: int = 0
    undecided: int = 0
    violations: int = 0
    member_exponents: list = field(default_factory=list)
    assumption: str = CONDITIONAL_NOTE

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["member_exponents"] = [[list(ev.e), ev.unit_sign] for ev in self.member_exponents]
        return out


def verify_bounds_theorem(n: int, E: int, pcf_type: str, precision: int | None = None) -> BoundsReport:
    """Every enumerated member must survive the exclusion test; counts the rest."""
    pcf_type = str(pcf_type)
    member = in_RE12 if pcf_type == "12" else in_RE03
    report = BoundsReport(n, E, pcf_type)
    for ev, unit in enumerate_units(n, E):
        report.units += 1
        if unit.is_torsion():
            continue
        is_member = member(unit)
        try:
            excluded = bound_excludes(unit, pcf_type, precision)
        except UndecidedError:
            report.undecided += 1
            continue
        if excluded:
            report.excluded += 1
        if is_member:
            report.members += 1
            report.member_exponents.append(ev)
            if excluded:
                report.violations += 1
                raise BoundViolation(ev, pcf_type)
    return report


# ---------------------------------------------------------------------------
# generator independence and round trips
# ---------------------------------------------------------------------------

def generator_log_matrix(n: int, precision: int | None = None) -> list[LogVector]:
    return [log_embedding(g, precision) for g in generators(n)]


def generator_log_determinant(n: int, precision: int | None = None):
    """Certified determinant of the generators' log-embedding matrix; excludes zero."""
    def probe(bits):
        rows = generator_log_matrix(n, bits)
        det = iv.det(iv.matrix([[c for c in r] for r in rows]))
        return det if sign(det) is not None else None

    return decide(probe, f"log-generator determinant at n={n}", precision)


def round_trip_ok(unit: RelUnit) -> bool:
    """Unit -> PCF -> unit and PCF -> unit -> PCF are identities for every type the unit has."""
    ok = True
    if in_RE12(unit):
        pcf = pcf12_from_unit(unit)
        back = unit_from_pcf12(pcf)
        ok &= back.elem == unit.elem and pcf12_from_unit(back) == pcf
    if in_RE03(unit):
        pcf = pcf03_from_unit(unit)
        back = unit_from_pcf03(pcf)
        ok &= back.elem == unit.elem and pcf03_from_unit(back) == pcf
    return ok
