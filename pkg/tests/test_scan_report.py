import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from johnson_iso import closed_form as cf
from johnson_iso.errors import ParameterError
from johnson_iso.scan_report import (CSV_HEADER, ScanReport, audit_sample, convergence_table,
                                     fast_gap, read_checkpoint, report_json, scan_chunk,
                                     scan_conjecture, slow_gap, write_checkpoint,
                                     write_convergence_csv)


def untimed(rep):
    return rep.to_json(timing=False)


@given(st.integers(3, 10**40))
def test_fast_gap_matches_fraction_path(n):
    num, den = fast_gap(n)
    assert Fraction(num, den) == slow_gap(n) == cf.conjecture_gap(n)


@pytest.mark.parametrize("n,gap", [(4, Fraction(0)), (5, Fraction(38, 35))])
def test_single_point_scans(n, gap):
    rep = scan_conjecture(n, n)
    assert rep.max_gap == gap and rep.argmax_n == n and rep.ok


def test_scan_small_range():
    rep = scan_conjecture(3, 10**4)
    assert rep.ok and rep.violations == []
    assert rep.max_gap == max(cf.conjecture_gap(n) for n in range(3, 2000))
    assert rep.max_gap == Fraction(1597, 1102) and rep.argmax_n == 18


def test_tight_bound_records_violations():
    rep = scan_conjecture(3, 40, Fraction(1))
    expected = [n for n in range(3, 41) if cf.conjecture_gap(n) > 1]
    assert [n for n, _ in rep.violations] == expected
    assert all(g == cf.conjecture_gap(n) for n, g in rep.violations)
    assert not rep.ok


def test_chunk_size_and_workers_do_not_change_report():
    ref = untimed(scan_conjecture(3, 5000))
    for chunk in (1, 17, 999, 5000):
        assert untimed(scan_conjecture(3, 5000, chunk_size=chunk)) == ref
    assert untimed(scan_conjecture(3, 5000, workers=3, chunk_size=700)) == ref


def test_checksum_combines_across_chunks():
    whole = scan_chunk(3, 500)
    rep = ScanReport(3, 500, last_n=2)
    rep.merge(scan_chunk(3, 200))
    rep.merge(scan_chunk(201, 500))
    assert rep.checksum == whole.checksum
    with pytest.raises(ParameterError):
        rep.merge(scan_chunk(600, 700))


def test_checkpoint_roundtrip(tmp_path):
    rep = scan_conjecture(3, 60, Fraction(1))
    path = tmp_path / "ck.txt"
    rep.last_n = 60
    write_checkpoint(path, rep)
    text = path.read_text().splitlines()
    assert text[:3] == ["n=60", f"max_gap={rep.max_gap.numerator}/{rep.max_gap.denominator}",
                        f"checksum={rep.checksum:016x}"]
    state = read_checkpoint(path)
    assert state["violations"] == rep.violations and state["argmax_n"] == rep.argmax_n
    assert not (tmp_path / "ck.txt.tmp").exists()


def test_checkpoint_missing_fields(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n=10\n")
    with pytest.raises(ParameterError):
        read_checkpoint(path)


def test_resume_equals_uninterrupted(tmp_path):
    ck = tmp_path / "scan.ck"
    full = scan_conjecture(3, 100000, Fraction(7, 5), chunk_size=8192)
    first = scan_conjecture(3, 50000, Fraction(7, 5), chunk_size=8192, checkpoint=ck)
    assert read_checkpoint(ck)["last_n"] == 50000 and first.violations
    resumed = scan_conjecture(3, 100000, Fraction(7, 5), chunk_size=8192, checkpoint=ck)
    assert untimed(resumed) == untimed(full)
    assert read_checkpoint(ck)["last_n"] == 100000


def test_checkpoint_interval(tmp_path):
    ck = tmp_path / "scan.ck"
    scan_conjecture(3, 1000, chunk_size=100, checkpoint=ck, checkpoint_interval=4)
    assert read_checkpoint(ck)["last_n"] == 1000


def test_scan_rejects_bad_ranges():
    for args in [(2, 10), (10, 9)]:
        with pytest.raises(ParameterError):
            scan_conjecture(*args)
    with pytest.raises(ParameterError):
        scan_conjecture(3, 10, chunk_size=0)


def test_audit_sample_is_clean():
    assert audit_sample(3, 10**6, 300, seed=1) == []
    assert audit_sample(10**15, 10**15 + 10**6, 300, seed=2) == []
    assert audit_sample(3, 50) == []


def test_json_roundtrip():
    rep = scan_conjecture(3, 200, Fraction(1))
    d = json.loads(report_json(rep))
    back = ScanReport.from_json(d)
    assert untimed(back) == untimed(rep)
    assert d["max_gap"] == {"num": str(rep.max_gap.numerator), "den": str(rep.max_gap.denominator)}
    assert "elapsed_seconds" in d and "elapsed_seconds" not in untimed(rep)


def test_convergence_table_and_csv():
    rows = convergence_table([4, 5, 100])
    assert rows[0].deviation.startswith("0.853553") and rows[1].gap == "1.08571428571"
    buf = io.StringIO()
    write_convergence_csv(rows, buf)
    lines = buf.getvalue().split("\r\n")
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[2].startswith("5,2.80000000000,1.71428571429,0.955979797464,")
    assert len(lines) == 5 and lines[-1] == ""
