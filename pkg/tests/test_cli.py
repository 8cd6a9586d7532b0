import io
import json
import subprocess
import sys

import pytest

from appellconv import identities as ids
from appellconv.cli import main
from appellconv.moments import Uniform01
from appellconv.reports import FIELDS, ReportWriter, read_records, write_all
from appellconv.stirling import corrupted_stirling_table
from appellconv.sweeps import SweepSpec, run_sweep


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_table_bernoulli():
    code, out, _ = run("table", "bernoulli", "--n", "4")
    assert code == 0
    assert out.splitlines() == ["0 1", "1 -1/2", "2 1/6", "3 0", "4 -1/30"]


def test_table_euler_and_cauchy():
    assert run("table", "euler", "--n", "3")[1].splitlines()[-1] == "3 1/4"
    assert run("table", "cauchy", "--n", "2")[1].splitlines()[-1] == "2 -1/6"


def test_table_bernoulli_polynomial():
    code, out, _ = run("table", "bernoulli", "--n", "2", "--poly")
    assert code == 0
    assert out.splitlines() == ["0 1/6", "1 -1", "2 1"]


def test_table_stirling():
    code, out, _ = run("table", "stirling", "--n", "4")
    assert code == 0
    assert "4 2 7" in out.splitlines()
    assert [l for l in out.splitlines() if l.startswith("4 ")] == ["4 0 0", "4 1 1", "4 2 7", "4 3 6", "4 4 1"]


def test_table_stirling_y():
    code, out, _ = run("table", "stirling-y", "--rv", "uniform01", "--n", "2", "--r", "1")
    assert code == 0
    assert out == "2 1 1/3\n"


def test_table_writes_file(tmp_path):
    target = tmp_path / "b.txt"
    assert run("table", "bernoulli", "--n", "2", "--out", str(target))[0] == 0
    assert target.read_text() == "0 1\n1 -1/2\n2 1/6\n"


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "bogus", "--n", "3"),
        ("table", "bernoulli", "--n", "-1"),
        ("table", "stirling-y", "--n", "3"),
        ("table", "stirling-y", "--rv", "poisson", "--n", "3"),
        ("table", "stirling", "--n", "3", "--r", "5"),
        ("verify", "theorem4", "--n-max", "3", "--w", "0.5,1"),
        ("verify", "corollary43", "--n-max", "3"),
        ("verify", "nosuch", "--n-max", "3"),
        ("verify", "eq440", "--n-max", "3", "--m", "1"),
        ("verify", "theorem5", "--n-max", "2", "--oracle", "dirichlet:1,2,3", "--m", "2"),
        (),
    ],
)
def test_usage_errors_exit_two(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert err.startswith("usage error")


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "theorem4", "--m", "2", "--n-max", "8", "--slots", "uniform01,uniform01", "--w", "1,1"),
        ("verify", "norlund", "--n-max", "10"),
        ("verify", "corollary43", "--alpha", "1,2", "--n-max", "6", "--x", "1/2"),
        ("verify", "theorem1", "--n-max", "6", "--rv", "uniform01,cauchy", "--x", "0,1/2"),
        ("verify", "theorem5", "--m", "2,3", "--n-max", "4", "--oracle", "iid:exponential"),
        ("verify", "corollary41", "--n-max", "4", "--alpha", "1,1/2,2"),
        ("verify", "corollary42", "--m", "3", "--n-max", "5"),
        ("verify", "corollary45", "--m", "2,3", "--n-max", "5"),
        ("verify", "corollary46", "--m", "2", "--n-max", "5", "--x", "1/3"),
        ("verify", "eq440", "--m", "3", "--n-max", "5"),
        ("verify", "lemma8", "--m", "2", "--n-max", "5"),
        ("verify", "lemma8", "--n-max", "4", "--t", "1/2,1/2"),
    ],
)
def test_verify_commands_pass(argv):
    code, out, err = run(*argv)
    assert code == 0, err
    records = list(read_records(io.StringIO(out), "csv"))
    assert records and all(r["equal"] for r in records)
    assert records[0]["identity"] == argv[1]


def test_norlund_report_flags_printed_sign():
    _, out, _ = run("verify", "norlund", "--n-max", "2", "--x", "0")
    records = list(read_records(io.StringIO(out), "csv"))
    assert all(r["equal"] for r in records)
    first = dict(kv.split("=") for kv in records[0]["parameters"].split(";"))
    assert first["printed_equal"] == "false"


def test_jsonl_output():
    code, out, _ = run("verify", "lemma8", "--m", "2", "--n-max", "2", "--format", "jsonl")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert set(rows[0]) == set(FIELDS)
    assert rows[0]["equal"] is True


def test_no_timing_output_is_byte_stable(tmp_path):
    argv = ["verify", "theorem5", "--m", "2", "--n-max", "4", "--no-timing"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*argv, "--out", str(first))[0] == 0
    assert run(*argv, "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert b",0\n" in first.read_bytes()


def test_seed_changes_draws():
    base = ["verify", "theorem4", "--n-max", "3", "--no-timing"]
    assert run(*base, "--seed", "1")[1] != run(*base, "--seed", "2")[1]


def test_failure_exits_one_and_last_record_is_the_failure():
    with corrupted_stirling_table():
        code, out, _ = run("verify", "corollary45", "--m", "2", "--n-max", "6", "--x", "1/3")
    assert code == 1
    records = list(read_records(io.StringIO(out), "csv"))
    assert not records[-1]["equal"]
    assert all(r["equal"] for r in records[:-1])


def test_report_roundtrip_csv_and_jsonl():
    reports = [ids.chu_vandermonde_check((1, 2), n) for n in range(4)]
    for fmt in ("csv", "jsonl"):
        buf = io.StringIO()
        assert write_all(reports, buf, fmt)
        back = list(read_records(io.StringIO(buf.getvalue()), fmt))
        assert [r["lhs"] for r in back] == [rep.as_record()["lhs"] for rep in reports]
        assert [r["n"] for r in back] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        ReportWriter(io.StringIO(), "xml")


def test_sweep_is_deterministic():
    def lines(seed):
        return [r.as_record()["parameters"] for r in run_sweep(SweepSpec("theorem4", 3, ms=(2, 3), seed=seed))]
    assert lines(5) == lines(5)
    spec = SweepSpec("theorem4", 2, slots=(Uniform01(),) * 2, weights=(1, 1), xs=(0, 0))
    assert len(list(run_sweep(spec))) == 3


def test_selftest_quick():
    code, out, _ = run("selftest", "--quick")
    assert code == 0
    lines = out.splitlines()
    assert sum(l.startswith("[PASS]") for l in lines) == 11
    assert lines[-1].startswith("11/11")


def test_selftest_inject_fault_fails():
    code, out, _ = run("selftest", "--quick", "--inject-fault")
    assert code == 1
    failed = [l for l in out.splitlines() if l.startswith("[FAIL]")]
    assert any(" 3." in l for l in failed)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "appellconv", "table", "bernoulli", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "0 1\n1 -1/2\n2 1/6\n"
