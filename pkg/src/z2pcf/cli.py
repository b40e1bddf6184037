"""Command-line front end: ``z2pcf {verify,expand,bounds,enumerate,eval}``.

Exit codes: 0 pass, 1 a mathematical check failed, 2 usage error,
3 undecided at maximum precision, 4 out of memory or recursion depth.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import intervals
from .bounds import bound_table
from .enumerator import CONDITIONAL_NOTE, emit_points
from .intervals import UndecidedError, format_interval, midpoint_str
from .pcf_core import (PCF, convergence_check, convergents, evaluate, parse_pcf, pell_identity_check,
                       variety_member)
from .tower_ring import RingElem, join, parse_elem, relative_norm
from .units import (PreconditionError, delta, delta_pcf_closed_form, eta, eta_pcf_closed_form, in_RE03,
                    in_RE12, pcf03_from_unit, pcf12_from_unit, pcf13, rel_unit_from, relax13,
                    unit_from_pcf03, unit_from_pcf12)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED, EXIT_RESOURCE = 0, 1, 2, 3, 4
EXACT = "exact"
NUMERIC = "numeric (certified interval)"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_level: int = 3
    precision_bits: int | None = None
    enumeration_bound: int = 6
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        # max_level 0 is accepted: verify then passes vacuously
        if not 0 <= self.max_level <= 6:
            raise UsageError(f"--max-level must be in [0, 6], got {self.max_level}")
        if self.precision_bits is not None and not 32 <= self.precision_bits <= intervals.MAX_PRECISION:
            raise UsageError(f"--precision must be in [32, {intervals.MAX_PRECISION}], got {self.precision_bits}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.format!r}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _check(name: str, n: int, ok: bool, kind: str = EXACT) -> dict:
    return {"name": name, "n": n, "passed": bool(ok), "kind": kind}


def _pcf_checks(tag: str, n: int, pcf: PCF) -> list[dict]:
    out = [_check(f"{tag}_variety_member", n, variety_member(pcf)),
           _check(f"{tag}_pell_identity", n, pell_identity_check(pcf))]
    out.append(_check(f"{tag}_converges", n, bool(convergence_check(pcf)), NUMERIC))
    val = evaluate(pcf)
    out.append(_check(f"{tag}_evaluates_to_plus_X", n, val.is_exact and val.sign == 1, NUMERIC))
    return out


def verify_level(n: int) -> list[dict]:
    d, e = delta(n), eta(n)
    checks = [
        _check("delta_relative_norm_is_1", n, relative_norm(d.elem) == 1),
        _check("eta_relative_norm_is_minus_1", n, relative_norm(e.elem) == -1),
    ]
    xm = RingElem.gen(n - 1)
    checks.append(_check("delta_p_closed_form", n, d.p == (xm + 6) / (xm - 2)))
    checks.append(_check("delta_q_closed_form", n, d.q == 4 / (xm - 2)))
    p12 = pcf12_from_unit(d)
    checks.append(_check("delta_pcf_closed_form", n, p12 == delta_pcf_closed_form(n)))
    checks += _pcf_checks("delta_pcf", n, p12)
    back = unit_from_pcf12(p12)
    checks.append(_check("delta_round_trip", n, back.elem == d.elem and pcf12_from_unit(back) == p12))

    p03 = pcf03_from_unit(e)
    checks.append(_check("eta_pcf_closed_form", n, p03 == eta_pcf_closed_form(n)))
    checks += _pcf_checks("eta_pcf", n, p03)
    back = unit_from_pcf03(p03)
    checks.append(_check("eta_round_trip", n, back.elem == e.elem and pcf03_from_unit(back) == p03))

    relaxed, sol = pcf13(n)
    checks.append(_check("pcf13_convergent_is_eta", n, sol.check() and sol.unit() == e.elem))
    checks.append(_check("pcf13_pell_identity", n, pell_identity_check(relaxed)))
    return checks


def cmd_verify(config: RunConfig, out) -> int:
    checks = []
    for n in range(1, config.max_level + 1):
        checks += verify_level(n)
    failed = [c for c in checks if not c["passed"]]
    for c in checks:
        out.write(f"{'PASS' if c['passed'] else 'FAIL'}  n={c['n']}  {c['name']}  [{c['kind']}]\n")
    status = "PASS" if not failed else "FAIL"
    out.write(f"{status}: {len(checks) - len(failed)}/{len(checks)} checks, max level {config.max_level}\n")
    report = {"max_level": config.max_level, "status": status, "checks": checks}
    text = json.dumps(report, indent=1) + "\n"
    if config.output_path:
        _write(config.output_path, text)
    else:
        out.write(text)
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------

def _resolve_unit(text: str, n: int):
    if text == "delta":
        return delta(n)
    if text == "eta":
        return eta(n)
    x = parse_elem(text, n)
    if x.level != n:
        raise UsageError(f"unit {text!r} is at level {x.level}, expected {n}")
    u = rel_unit_from(x)
    if u is None:
        raise PreconditionError(f"{x.to_text()} is not a relative unit")
    return u


def cmd_expand(n: int, pcf_type: str, unit_spec: str, out) -> int:
    unit = _resolve_unit(unit_spec, n)
    member = in_RE12(unit) if pcf_type == "12" else in_RE03(unit)
    if not member:
        out.write(f"{unit.elem.to_text()} is not in RE_{n}{'^+(1,2)' if pcf_type == '12' else '^-(0,3)'}\n")
        return EXIT_FAIL
    if pcf_type == "12":
        pcf = pcf12_from_unit(unit)
        back = unit_from_pcf12(pcf)
    else:
        base = pcf03_from_unit(unit)
        back = unit_from_pcf03(base)
        pcf = relax13(base) if pcf_type == "13" else base
    flags = {
        "variety_member": variety_member(pcf),
        "pell_identity": pell_identity_check(pcf),
        "round_trip": back.elem == unit.elem,
    }
    report = convergence_check(pcf)
    flags["converges"] = bool(report)
    val = evaluate(pcf) if report else None
    flags["evaluates_to_plus_X"] = bool(val is not None and val.is_exact and val.sign == 1)
    if pcf_type == "13":
        p2, q2, _, _ = convergents(pcf, 2)
        flags["second_convergent_is_unit"] = join(p2, q2) == unit.elem

    out.write(f"unit: {unit.elem.pretty()}  ({unit.elem.to_text()})\n")
    out.write(f"pcf:  {pcf.pretty()}\n")
    out.write(f"text: {pcf.to_text()}\n")
    for k, v in flags.items():
        kind = NUMERIC if k in ("converges", "evaluates_to_plus_X") else EXACT
        out.write(f"  {k}: {'PASS' if v else 'FAIL'} [{kind}]\n")
    if val is not None:
        out.write(f"value: {val}\n")
    return EXIT_OK if all(flags.values()) else EXIT_FAIL


# ---------------------------------------------------------------------------
# bounds / enumerate / eval
# ---------------------------------------------------------------------------

def _pattern(s) -> str:
    return "".join("+" if v > 0 else "-" for v in s)


def cmd_bounds(n: int, pcf_type: str, fmt: str | None, path: str | None, out) -> int:
    if pcf_type not in ("12", "03"):
        raise UsageError("bounds supports --type 12 or 03")
    table = bound_table(n, pcf_type)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s_pattern", "sigma_index", "a_s", "b", "C"])
        for e in table.rows():
            w.writerow([_pattern(e.s), e.sigma, e.a_s.to_text(), midpoint_str(e.b), midpoint_str(e.C)])
        text = buf.getvalue()
    elif fmt == "json":
        rows = [{"s_pattern": _pattern(e.s), "sigma_index": e.sigma, "a_s": e.a_s.to_text(),
                 "b": midpoint_str(e.b), "C": midpoint_str(e.C)} for e in table.rows()]
        text = json.dumps({"n": n, "type": pcf_type, "rows": rows}, indent=1) + "\n"
    else:
        lines = [(_pattern(e.s), str(e.sigma), e.a_s.pretty(), format_interval(e.b), format_interval(e.C))
                 for e in table.rows()]
        head = ("s", "sigma", "a_s", "b", "C")
        widths = [max(len(r[i]) for r in lines + [head]) for i in range(5)]
        text = "".join("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() + "\n"
                       for r in [head] + lines)
    if path:
        _write(path, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_enumerate(n: int, E: int, fmt: str, path: str | None, out, err) -> int:
    if n < 1:
        raise UsageError("--n must be >= 1")
    if E < 0:
        raise UsageError("--bound must be >= 0")
    text = emit_points(n, E, fmt, path)
    err.write(f"note: {CONDITIONAL_NOTE}\n")
    if path is None:
        out.write(text)
    return EXIT_OK


def cmd_eval(text: str, n: int, out) -> int:
    pcf = parse_pcf(text, n - 1)
    report = convergence_check(pcf)
    out.write(f"pcf: {pcf.pretty()}\n")
    out.write(f"convergence: {report} [{NUMERIC}]\n")
    if not report:
        return EXIT_FAIL
    val = evaluate(pcf)
    if val.is_exact:
        out.write(f"{val}\n")
        out.write(f"variety_member: {'PASS' if variety_member(pcf) else 'FAIL'} [{EXACT}]\n")
    else:
        out.write(f"{format_interval(val.numeric)}\n")
    return EXIT_OK


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="z2pcf", description="PCFs and relative units over Z[X_n].")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="working precision in bits (32..4096)")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run the delta/eta identity suite")
    v.add_argument("--max-level", type=int, default=3)
    v.add_argument("--out")

    x = sub.add_parser("expand", parents=[common], help="PCF expansion of a relative unit")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--type", choices=["12", "03", "13"], required=True)
    x.add_argument("--unit", required=True, help="delta, eta or an element such as L1:[3,2]")

    b = sub.add_parser("bounds", parents=[common], help="table of a_s, b and C")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--type", choices=["12", "03"], required=True)
    b.add_argument("--format", choices=["csv", "json"])
    b.add_argument("--out")

    e = sub.add_parser("enumerate", parents=[common], help="export log-embedding points")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--bound", type=int, default=6)
    e.add_argument("--format", choices=["csv", "json"], default="csv")
    e.add_argument("--out")

    ev = sub.add_parser("eval", parents=[common], help="evaluate a PCF")
    ev.add_argument("--pcf", required=True, help='e.g. "[2|-2,4]"')
    ev.add_argument("--n", type=int, required=True)
    return ap


def _level(n: int) -> int:
    if not 1 <= n <= 6:
        raise UsageError(f"--n must be in [1, 6], got {n}")
    return n


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config = RunConfig(max_level=getattr(args, "max_level", 3) or 0,
                           precision_bits=args.precision,
                           enumeration_bound=getattr(args, "bound", 6),
                           output_path=getattr(args, "out", None),
                           format=getattr(args, "format", None) or "csv")
        intervals.set_default_precision(config.precision_bits)
        try:
            if args.command == "verify":
                return cmd_verify(config, out)
            if args.command == "expand":
                return cmd_expand(_level(args.n), args.type, args.unit, out)
            if args.command == "bounds":
                return cmd_bounds(_level(args.n), args.type, args.format, args.out, out)
            if args.command == "enumerate":
                return cmd_enumerate(_level(args.n), args.bound, config.format, args.out, out, err)
            return cmd_eval(args.pcf, _level(args.n), out)
        finally:
            intervals.set_default_precision(None)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except UndecidedError as exc:
        err.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    except PreconditionError as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_FAIL
    except (MemoryError, RecursionError) as exc:
        err.write(f"resource exhausted: {type(exc).__name__}\n")
        return EXIT_RESOURCE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        # parse errors from the element/PCF grammar
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
