import os

import pytest

from twinconst.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hseq_terms(capsys):
    code, out, _ = run(capsys, "hseq", "--start", "3", "--n", "11")
    assert code == 0
    assert out.strip() == "3 5 6 7 8 11 12 14 15 17"


def test_hseq_bfile(capsys):
    code, out, _ = run(capsys, "hseq", "--start", "17", "--n", "10",
                       "--format", "bfile")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "2 17"
    assert lines[-1] == "10 33"


def test_hseq_nonprime_start(capsys):
    code, _, err = run(capsys, "hseq", "--start", "4", "--n", "5")
    assert code == 2
    assert "not prime" in err


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "5", "3")
    assert code == 0
    assert "merge=11" in out and "max_diff=4" in out and "m=0" in out

    code, out, _ = run(capsys, "trace", "7", "5")
    assert code == 0
    assert "merge=47" in out and "max_diff=14" in out and "m=13" in out

    code, out, _ = run(capsys, "trace", "19", "17")
    assert "max_diff=6" in out and "max_diff_at=5" in out


def test_trace_invalid_pair(capsys):
    code, _, err = run(capsys, "trace", "6", "3")
    assert code == 2


def test_trace_bound_exhausted(capsys):
    code, out, _ = run(capsys, "trace", "17", "3", "--bound", "100")
    assert code == 3
    assert "merge=none" in out


def test_scan_c(capsys):
    code, out, _ = run(capsys, "scan", "c", "--limit", "4000")
    assert code == 0
    assert out.strip() == ("3 11 17 29 59 227 269 1277 1289 1607 2129 2789 "
                           "3527 3917")


def test_scan_m(capsys):
    code, out, _ = run(capsys, "scan", "m", "--count", "23")
    assert code == 0
    assert out.strip() == "0 13 0 0 0 9 0 11 11 5 3 15 3 7 3 0 3 0 3 5 7 3 11"


def test_scan_maxdiff(capsys):
    code, out, _ = run(capsys, "scan", "maxdiff", "--count", "21")
    assert code == 0
    assert out.strip() == ("4 14 6 6 6 12 6 8 14 14 18 36 24 65 18 6 10 6 "
                           "84 14 162")


def test_scan_merge(capsys):
    code, out, _ = run(capsys, "scan", "merge", "--count", "15")
    assert code == 0
    assert out.strip() == "11 47 47 47 47 11 47 47 17 17 683 683 683 683 683"


def test_scan_merge_bound_exhausted(capsys):
    code, out, err = run(capsys, "scan", "merge", "--count", "15",
                         "--bound", "100")
    assert code == 3
    assert "did not merge" in err


def test_scan_missing_arg(capsys):
    code, _, err = run(capsys, "scan", "c")
    assert code == 2
    code, _, err = run(capsys, "scan", "m")
    assert code == 2


def test_scan_bfile_round_trip(capsys):
    from twinconst.bfile import parse_bfile
    code, out, _ = run(capsys, "scan", "c", "--limit", "100",
                       "--format", "bfile")
    assert code == 0
    rec = parse_bfile(out)
    assert rec.offset == 1
    assert rec.terms == (3, 11, 17, 29, 59)


def test_verify_t1(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "verify", "t1", "--limit", "50000")
    assert code == 0
    assert "verified: True" in out
    assert (tmp_path / "twinconst-t1.report").exists()


def test_verify_t2_report_path(tmp_path, capsys):
    report = tmp_path / "t2.report"
    code, out, _ = run(capsys, "verify", "t2", "--limit", "10000",
                       "--report", str(report))
    assert code == 0
    assert report.exists()
    assert "m_histogram" in report.read_text()


def test_verify_cor(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "verify", "cor", "--limit", "10000")
    assert code == 0


def test_verify_conj1(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "verify", "conj1", "--primes", "5",
                       "--bound", "10000")
    assert code == 0
    assert "conjecture1" in out


def test_compare_fixtures(capsys):
    for name in ("a276848", "a276826", "a276676", "m-sequence"):
        code, out, _ = run(capsys, "compare", name)
        assert code == 0, (name, out)
        assert "match" in out


def test_compare_unknown(capsys):
    code, _, err = run(capsys, "compare", "nonexistent")
    assert code == 2
    assert "unknown fixture" in err


def test_worker_env_default(monkeypatch):
    monkeypatch.setenv("TWINCONST_WORKERS", "3")
    from twinconst.cli import _default_workers
    assert _default_workers() == 3
    monkeypatch.setenv("TWINCONST_WORKERS", "junk")
    assert _default_workers() == 1


def test_output_worker_invariance(capsys):
    code1, out1, _ = run(capsys, "scan", "c", "--limit", "50000",
                         "--workers", "1")
    code2, out2, _ = run(capsys, "scan", "c", "--limit", "50000",
                         "--workers", "4")
    assert code1 == code2 == 0
    assert out1 == out2
