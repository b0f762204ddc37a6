"""Range scan of |ratio_L - ratio_Fp| <= bound, and the convergence table.

The per-n work is a handful of big-int products; nothing is shared between
values of n, so the range is cut into chunks and farmed out to processes.
Chunk results are merged in range order, which makes the report (including
the checksum) independent of worker count and chunk size.

Checksum: h <- (h * FNV_PRIME + (gap numerator mod 2^64)) mod 2^64 over n in
increasing order, gap in lowest terms, starting from h = 0.
"""
from __future__ import annotations

import csv
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path

from . import closed_form as cf
from .boundary import fmt_ratio, parse_ratio
from .errors import ParameterError

log = logging.getLogger(__name__)

DEFAULT_BOUND = Fraction(3, 2)
DEFAULT_CHUNK = 1 << 20
FNV_PRIME = 0x100000001B3
MASK64 = (1 << 64) - 1
CHECKPOINT_ENV = "JOHNSON_ISO_CHECKPOINT_INTERVAL"


def fast_gap(n: int) -> tuple[int, int]:
    """Unreduced (num, den) of |ratio_L - ratio_Fp| using integers only.

    Both ratios are 2(n-1) - X/size; the 2(n-1) cancels in the difference.
    """
    ns = n * (n - 1) >> 2
    q = (isqrt(8 * ns + 1) - 1) >> 1
    if q * (q + 1) >> 1 < ns:
        q += 1
    a = ns - (q * (q - 1) >> 1)  # vertices of L in its partial row
    xl = a * a + (q - 1) * (q - 1) * (q - a) + q * q * a

    t = 2 * n - 1
    p = (t - isqrt(t * t - 8 * ns) + 1) >> 1
    fs = p * n - (p * (p + 1) >> 1)
    xf = p * (n - 1) * (n - 1) + (n - p) * p * p
    return abs(xf * ns - xl * fs), fs * ns


def slow_gap(n: int) -> Fraction:
    """Same gap from Fractions over the displayed closed forms."""
    return abs(cf.ratio_L_quartic(n) - cf.ratio_Fp_rowform(n))


@dataclass
class ChunkResult:
    lo: int
    hi: int
    max_num: int
    max_den: int
    argmax_n: int
    violations: list[tuple[int, int, int]]
    checksum: int


def scan_chunk(lo: int, hi: int, bound_num: int = 3, bound_den: int = 2) -> ChunkResult:
    best_num, best_den, arg = -1, 1, lo
    viol = []
    h = 0
    for n in range(lo, hi + 1):
        num, den = fast_gap(n)
        g = gcd(num, den)
        if bound_den * num > bound_num * den:
            viol.append((n, num // g, den // g))
        if num * best_den > best_num * den:
            best_num, best_den, arg = num, den, n
        h = (h * FNV_PRIME + ((num // g) & MASK64)) & MASK64
    g = gcd(best_num, best_den)
    return ChunkResult(lo, hi, best_num // g, best_den // g, arg, viol, h)


def _scan_chunk_star(args):
    return scan_chunk(*args)


@dataclass
class ScanReport:
    n_from: int
    n_to: int
    bound: Fraction = DEFAULT_BOUND
    max_gap: Fraction = Fraction(-1)
    argmax_n: int = 0
    violations: list[tuple[int, Fraction]] = field(default_factory=list)
    checksum: int = 0
    elapsed_seconds: float = 0.0
    rows_per_second: float = 0.0
    last_n: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, c: ChunkResult) -> None:
        if c.lo != self.last_n + 1:
            raise ParameterError(f"chunk starting at {c.lo} merged after n = {self.last_n}")
        gap = Fraction(c.max_num, c.max_den)
        if gap > self.max_gap:
            self.max_gap, self.argmax_n = gap, c.argmax_n
        self.violations.extend((n, Fraction(a, b)) for n, a, b in c.violations)
        self.checksum = (self.checksum * pow(FNV_PRIME, c.hi - c.lo + 1, 1 << 64)
                         + c.checksum) & MASK64
        self.last_n = c.hi

    def to_json(self, timing: bool = True) -> dict:
        d = {
            "n_from": self.n_from,
            "n_to": self.n_to,
            "bound": _ratio_obj(self.bound),
            "max_gap": _ratio_obj(self.max_gap),
            "argmax_n": self.argmax_n,
            "violations": [{"n": n, "gap": _ratio_obj(g)} for n, g in self.violations],
            "checksum": f"{self.checksum:016x}",
        }
        if timing:
            d["elapsed_seconds"] = round(self.elapsed_seconds, 6)
            d["rows_per_second"] = round(self.rows_per_second, 1)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ScanReport":
        return cls(
            n_from=d["n_from"], n_to=d["n_to"],
            bound=_ratio_from_obj(d.get("bound", {"num": "3", "den": "2"})),
            max_gap=_ratio_from_obj(d["max_gap"]), argmax_n=d["argmax_n"],
            violations=[(v["n"], _ratio_from_obj(v["gap"])) for v in d["violations"]],
            checksum=int(d["checksum"], 16),
            elapsed_seconds=d.get("elapsed_seconds", 0.0),
            rows_per_second=d.get("rows_per_second", 0.0),
            last_n=d["n_to"],
        )


def _ratio_obj(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _ratio_from_obj(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


# Checkpoint: the three required lines, then argmax_n and violations so a
# resumed scan reproduces the uninterrupted report exactly.

def write_checkpoint(path, rep: ScanReport) -> None:
    path = Path(path)
    viol = ";".join(f"{n}:{fmt_ratio(g)}" for n, g in rep.violations)
    text = (f"n={rep.last_n}\n"
            f"max_gap={fmt_ratio(rep.max_gap)}\n"
            f"checksum={rep.checksum:016x}\n"
            f"argmax_n={rep.argmax_n}\n"
            f"violations={viol}\n")
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def read_checkpoint(path) -> dict:
    fields = {}
    for line in Path(path).read_text().splitlines():
        if line.strip():
            key, _, val = line.partition("=")
            fields[key.strip()] = val.strip()
    missing = {"n", "max_gap", "checksum"} - fields.keys()
    if missing:
        raise ParameterError(f"checkpoint {path} lacks {sorted(missing)}")
    viol = []
    for item in filter(None, fields.get("violations", "").split(";")):
        n, _, g = item.partition(":")
        viol.append((int(n), parse_ratio(g)))
    return {
        "last_n": int(fields["n"]),
        "max_gap": parse_ratio(fields["max_gap"]),
        "checksum": int(fields["checksum"], 16),
        "argmax_n": int(fields.get("argmax_n", 0)),
        "violations": viol,
    }


def _chunks(lo: int, hi: int, size: int):
    while lo <= hi:
        top = min(hi, lo + size - 1)
        yield lo, top
        lo = top + 1


def scan_conjecture(n_from: int, n_to: int, bound: Fraction = DEFAULT_BOUND, *,
                    workers: int | None = 1, chunk_size: int = DEFAULT_CHUNK,
                    checkpoint=None, checkpoint_interval: int | None = None) -> ScanReport:
    """Check |ratio_L(n) - ratio_Fp(n)| <= bound for every n in [n_from, n_to].

    With `checkpoint`, progress is written after every `checkpoint_interval`
    chunks and an existing file is resumed from.
    """
    if n_from < 3 or n_to < n_from:
        raise ParameterError(f"need 3 <= n_from <= n_to, got [{n_from}, {n_to}]")
    if chunk_size < 1:
        raise ParameterError("chunk_size must be positive")
    bound = Fraction(bound)
    if bound < 0:
        raise ParameterError("bound must be nonnegative")
    if workers is None:
        workers = os.cpu_count() or 1
    if checkpoint_interval is None:
        checkpoint_interval = int(os.environ.get(CHECKPOINT_ENV, "1"))

    rep = ScanReport(n_from, n_to, bound, last_n=n_from - 1)
    if checkpoint is not None and Path(checkpoint).exists():
        state = read_checkpoint(checkpoint)
        if not n_from - 1 <= state["last_n"] <= n_to:
            raise ParameterError(f"checkpoint at n={state['last_n']} is outside [{n_from}, {n_to}]")
        rep.last_n = state["last_n"]
        rep.max_gap, rep.argmax_n = state["max_gap"], state["argmax_n"]
        rep.checksum, rep.violations = state["checksum"], state["violations"]
        log.info("resuming from n=%d", rep.last_n)

    start = rep.last_n + 1
    jobs = [(lo, hi, bound.numerator, bound.denominator)
            for lo, hi in _chunks(start, n_to, chunk_size)]
    t0 = time.perf_counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            _merge_all(rep, ex.map(_scan_chunk_star, jobs), checkpoint, checkpoint_interval)
    else:
        _merge_all(rep, map(_scan_chunk_star, jobs), checkpoint, checkpoint_interval)
    rep.elapsed_seconds = time.perf_counter() - t0
    done = n_to - start + 1
    rep.rows_per_second = done / rep.elapsed_seconds if rep.elapsed_seconds > 0 else 0.0
    return rep


def _merge_all(rep, results, checkpoint, interval):
    for k, c in enumerate(results, start=1):
        rep.merge(c)
        if checkpoint is not None and (k % interval == 0 or rep.last_n == rep.n_to):
            write_checkpoint(checkpoint, rep)
        log.debug("merged [%d, %d]", c.lo, c.hi)


def audit_sample(n_from: int, n_to: int, count: int = 1000, seed: int = 0,
                 bound: Fraction = DEFAULT_BOUND) -> list[int]:
    """Recheck `count` sampled n with the Fraction path; return mismatches."""
    rng = random.Random(seed)
    span = n_to - n_from + 1
    ns = range(n_from, n_to + 1) if span <= count else sorted(
        rng.sample(range(n_from, n_to + 1), count))
    bad = []
    for n in ns:
        num, den = fast_gap(n)
        slow = slow_gap(n)
        if Fraction(num, den) != slow or (slow <= bound) != (bound.denominator * num <= bound.numerator * den):
            bad.append(n)
    return bad


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ratio_L: str
    ratio_Fp: str
    deviation: str
    gap: str


def convergence_table(ns) -> list[ConvergenceRow]:
    rows = []
    for n in ns:
        rl, rf = cf.ratio_L(n), cf.ratio_Fp(n)
        rows.append(ConvergenceRow(n, cf.to_decimal(rl), cf.to_decimal(rf),
                                   cf.deviation(n), cf.to_decimal(abs(rl - rf))))
    return rows


CSV_HEADER = ["n", "ratio_L", "ratio_Fp", "deviation", "gap"]


def write_convergence_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\r\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.n, r.ratio_L, r.ratio_Fp, r.deviation, r.gap])


def report_json(rep: ScanReport, timing: bool = True) -> str:
    return json.dumps(rep.to_json(timing), indent=2)
