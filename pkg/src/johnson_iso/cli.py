"""Command-line front end.

Exit status: 0 success, 1 a check failed (violation or mismatch),
2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import asdict
from fractions import Fraction

from . import closed_form as cf
from . import oracle
from .boundary import boundary_lemma, fmt_ratio, iso_ratio, parse_ratio
from .candidate_sets import f_prime, first_m, last_m
from .errors import JohnsonError
from .scan_report import (audit_sample, convergence_table, scan_conjecture,
                          write_convergence_csv)


class UsageError(Exception):
    pass


def _members(S):
    return [str(v) for v in S.vertices()]


def cmd_exact(a):
    res = oracle.iso_exact(a.n, a.k)
    return {
        "n": a.n, "k": a.k,
        "iso": fmt_ratio(res.value),
        "witness": _members(res.witness),
        "bisection_lower_bound": oracle.bisection_bound(a.n, a.k),
    }, 0


def cmd_bcurve(a):
    curve = oracle.b_curve(a.n, a.k, a.m_max)
    rows = [{"m": m, "B": b, "witness": _members(w)} for m, (b, w) in curve.values.items()]
    return {"n": a.n, "k": a.k, "values": rows}, 0


def cmd_verify_ak(a):
    rep = oracle.verify_ak(a.n)
    entries = [{"m": e.m, "B": e.b, "boundary_F": e.boundary_F,
                "boundary_L": e.boundary_L, "winner": e.winner} for e in rep.entries]
    out = {"n": a.n, "ok": rep.ok, "entries": entries,
           "violations": [e.m for e in rep.violations]}
    return out, 0 if rep.ok else 1


def cmd_verify_lemmas(a):
    rep = oracle.verify_lemma_sweep(a.max_n, n_min=a.min_n)
    out = {
        "n_min": rep.n_min, "n_max": rep.n_max,
        "lemma4_checked": rep.lemma4_checked, "lemma5_checked": rep.lemma5_checked,
        "ok": rep.ok,
        "failures": [{"lemma": f.lemma, "n": f.n, "args": list(f.args), "reason": f.reason}
                     for f in rep.failures],
    }
    return out, 0 if rep.ok else 1


def closed_form_payload(n: int) -> dict:
    row = asdict(cf.closed_form_row(n))
    for key in ("ratio_L", "ratio_Fp", "gap"):
        row[key] = fmt_ratio(row[key])
    row["within_3_2"] = cf.gap_within(n)
    return row


def cmd_closed_form(a):
    return closed_form_payload(a.n), 0


def cmd_candidates(a):
    if a.set in ("F", "L"):
        if a.m is None:
            raise UsageError(f"--set {a.set} needs --m")
        S = (first_m if a.set == "F" else last_m)(a.n, a.m)
    else:
        if a.m is not None:
            raise UsageError("--set Fp takes no --m")
        S = f_prime(a.n)
    out = {"n": a.n, "set": a.set, "size": len(S), "boundary": boundary_lemma(S),
           "ratio": fmt_ratio(iso_ratio(S))}
    if a.m is not None:
        out["m"] = a.m
    if not a.no_members:
        out["members"] = _members(S)
    return out, 0


def cmd_scan(a):
    rep = scan_conjecture(a.n_from, a.n_to, a.bound, workers=a.workers,
                          chunk_size=a.chunk_size, checkpoint=a.checkpoint)
    out = rep.to_json(timing=not a.no_timing)
    bad = audit_sample(a.n_from, a.n_to, a.audit, bound=a.bound) if a.audit else []
    out["audit_samples"] = a.audit
    out["audit_mismatches"] = bad
    return out, 0 if rep.ok and not bad else 1


def cmd_converge(a):
    rows = convergence_table(a.ns)
    if a.output:
        with open(a.output, "w", newline="") as fh:
            write_convergence_csv(rows, fh)
    return {"rows": [asdict(r) for r in rows]}, 0


def _ratio_arg(s: str) -> Fraction:
    try:
        x = parse_ratio(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {s!r}")
    if x < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return x


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="johnson-iso",
                                 description="Exact isoperimetric computations on J(n,2).")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.set_defaults(func=func)
        return p

    p = add("exact", cmd_exact, "exhaustive iso(J(n,k)) with a witness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)

    p = add("bcurve", cmd_bcurve, "exhaustive B(m) curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m-max", type=int, default=None)

    p = add("verify-ak", cmd_verify_ak, "check that F_m or L_m attains B(m)")
    p.add_argument("--n", type=int, required=True)

    p = add("verify-lemmas", cmd_verify_lemmas, "sweep the two stable-set extensions")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=4)

    p = add("closed-form", cmd_closed_form, "closed-form row for one n")
    p.add_argument("--n", type=int, required=True)

    p = add("candidates", cmd_candidates, "materialise F_m, L_m or F'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=("F", "L", "Fp"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--no-members", action="store_true")

    p = add("scan", cmd_scan, "exact scan of the 3/2 gap bound")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--bound", type=_ratio_arg, default=Fraction(3, 2))
    p.add_argument("--checkpoint")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--chunk-size", type=int, default=1 << 20)
    p.add_argument("--audit", type=int, default=1000,
                   help="n values rechecked with the Fraction path (0 disables)")
    p.add_argument("--no-timing", action="store_true",
                   help="omit elapsed/throughput so reports compare byte-for-byte")

    p = add("converge", cmd_converge, "convergence table of ratio_L / ((2 - sqrt 2) n)")
    p.add_argument("--ns", type=_int_list, required=True)
    p.add_argument("--output", help="also write the CSV here")
    return ap


def _text(payload, indent="") -> list[str]:
    lines = []
    for key, val in payload.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(indent + "  " + " ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key}: {_scalar(val)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return f"{v['num']}/{v['den']}"
    if isinstance(v, dict):
        return " ".join(f"{k}={_scalar(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _csv_rows(payload):
    for key in ("rows", "values", "entries"):
        if key in payload:
            return payload[key]
    return None


def emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        rows = _csv_rows(payload)
        if not rows:
            return
        w = csv.writer(out, lineterminator="\r\n")
        w.writerow(list(rows[0]))
        for r in rows:
            w.writerow([_scalar(v) for v in r.values()])
    else:
        out.write("\n".join(_text(payload)) + "\n")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        payload, code = a.func(a)
        if a.format == "csv" and _csv_rows(payload) is None:
            raise UsageError("csv output is only available for converge, bcurve and verify-ak")
        emit(payload, a.format, sys.stdout)
    except (UsageError, JohnsonError) as e:
        print(f"johnson-iso {a.command}: {e}", file=sys.stderr)
        return 2
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
