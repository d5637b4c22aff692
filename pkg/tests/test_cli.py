"""CLI surface: subcommands, formats, exit codes, job files, parallelism."""

import json

import pytest

from heissplit.cli import main, _parse_p_spec


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPSpec:
    def test_single(self):
        assert _parse_p_spec("13") == [13]

    def test_list(self):
        assert _parse_p_spec("13,31") == [13, 31]

    def test_range_expands_to_primes(self):
        assert _parse_p_spec("3..20") == [3, 5, 7, 11, 13, 17, 19]
        assert _parse_p_spec("3-20") == [3, 5, 7, 11, 13, 17, 19]


class TestSplit:
    def test_both_example(self, capsys):
        code, out, _ = run(capsys, "split", "--both", "-p", "13", "-l", "2", "-a", "4")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("p,ell,a,")
        assert lines[1] == "13,2,4,0,0,1,8,4,8,true,271828"

    def test_oracle_only(self, capsys):
        code, out, _ = run(capsys, "split", "--oracle", "-p", "13", "-l", "2", "-a", "4")
        assert code == 0
        row = out.strip().split("\n")[1].split(",")
        assert row[6] == ""  # no prediction column
        assert row[7] == "4" and row[8] == "8"

    def test_predict_only(self, capsys):
        code, out, _ = run(capsys, "split", "--predict", "-p", "13", "-l", "2", "-a", "4")
        assert code == 0
        row = out.strip().split("\n")[1].split(",")
        assert row[6] == "8" and row[7] == "" and row[8] == ""


class TestSimpleCommands:
    def test_symbol(self, capsys):
        code, out, _ = run(capsys, "symbol", "-p", "7", "-l", "3", "-a", "2")
        assert code == 0
        assert out.strip().split("\n")[1].endswith(",2")

    def test_apoly_example(self, capsys):
        code, out, _ = run(capsys, "apoly", "-p", "5", "-l", "2")
        assert code == 0
        assert out.strip().split("\n")[1] == "5,2,1,1;1"

    def test_apoly_json(self, capsys):
        code, out, _ = run(capsys, "apoly", "-p", "5", "-l", "2", "--format", "json")
        assert code == 0
        assert json.loads(out)[0]["coeffs"] == [1, 1]

    def test_avalue_methods(self, capsys):
        code, out, _ = run(capsys, "avalue", "-p", "31", "-l", "3", "-a", "2",
                           "--format", "json")
        assert code == 0
        rec = json.loads(out)[0]
        assert rec["value"] == 1 and rec["method"] == "closed"
        code, out, _ = run(capsys, "avalue", "-p", "7", "-l", "3", "-a", "2",
                           "--format", "json")
        rec = json.loads(out)[0]
        assert rec["method"] == "poly"

    def test_frob(self, capsys):
        code, out, _ = run(capsys, "frob", "-p", "5", "-l", "2", "-a", "4",
                           "--format", "json")
        assert code == 0
        rec = json.loads(out)[0]
        assert rec["predicted"] == 4 and rec["case"] == "zero"

    def test_stats(self, capsys):
        code, out, _ = run(capsys, "stats", "-p", "13", "-l", "2")
        assert code == 0
        assert len(out.strip().split("\n")) == 6

    def test_detlemma(self, capsys):
        code, out, _ = run(capsys, "detlemma", "-p", "13", "-l", "2",
                           "--trials", "10")
        assert code == 0
        assert out.strip().split("\n")[1].endswith("true")

    def test_disc(self, capsys):
        code, out, _ = run(capsys, "disc", "-p", "13", "-l", "2", "-a", "4",
                           "--a2", "10")
        assert code == 0
        assert out.strip().split("\n")[1].endswith("true,true,true")


class TestScanVerify:
    def test_scan_exit_ok(self, capsys):
        code, out, _ = run(capsys, "scan", "-p", "13", "-l", "2", "--seed", "5")
        assert code == 0
        assert len(out.strip().split("\n")) == 11

    def test_scan_skips_bad_pairs_with_warning(self, capsys):
        code, out, err = run(capsys, "scan", "-p", "11,13", "-l", "3", "--seed", "5")
        assert code == 0
        assert "skipping p=11" in err
        rows = out.strip().split("\n")[1:]
        assert all(r.split(",")[0] == "13" for r in rows)

    def test_verify_exit_ok(self, capsys):
        code, out, err = run(capsys, "verify", "-p", "7", "-l", "3")
        assert code == 0
        assert "0 failures" in err

    def test_usage_error_exit_2(self, capsys):
        code, _, err = run(capsys, "split", "-p", "7", "-l", "5", "-a", "2")
        assert code == 2
        assert "error" in err

    def test_no_command_usage(self, capsys):
        code, _, _ = run(capsys)
        assert code == 2


class TestOutputs:
    def test_output_file_and_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("HEISSPLIT_OUTPUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, "scan", "-p", "13", "-l", "2",
                           "-o", "rows.csv", "--seed", "3")
        assert code == 0 and out == ""
        assert (tmp_path / "rows.csv").exists()
        text = (tmp_path / "rows.csv").read_text()
        assert text.startswith("p,ell,a,")

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "scan", "-p", "13", "-l", "2",
                           "--format", "json", "--seed", "3")
        rows = json.loads(out)
        assert len(rows) == 10
        assert all(r["agree"] for r in rows)
        assert all(r["seed"] == 3 for r in rows)


class TestJobFile:
    def test_runs_jobs_and_reports_bad_lines(self, capsys, tmp_path):
        jobs = tmp_path / "jobs.txt"
        jobs.write_text(
            "# two queries and one malformed line\n"
            "command=symbol p=7 l=3 a=2 seed=1\n"
            "command=split p=13 ell=2 a=4 mode=both\n"
            "bogus line without equals\n"
        )
        code = main(["--job-file", str(jobs)])
        captured = capsys.readouterr()
        assert code == 2  # worst exit: the malformed line
        assert "job line 4" in captured.err
        assert "13,2,4,0,0,1,8,4,8,true" in captured.out

    def test_nested_job_files_rejected(self, capsys, tmp_path):
        inner = tmp_path / "inner.txt"
        inner.write_text("command=symbol p=7 l=3 a=2\n")
        outer = tmp_path / "outer.txt"
        outer.write_text(f"command=--job-file o={inner}\n")
        code = main(["--job-file", str(outer)])
        captured = capsys.readouterr()
        assert code == 2
        assert "cannot nest" in captured.err


class TestDeterminism:
    def test_parallel_matches_serial_bytes(self, tmp_path):
        serial = tmp_path / "serial.csv"
        parallel = tmp_path / "parallel.csv"
        assert main(["scan", "-p", "13,29", "-l", "2", "--seed", "17",
                     "-o", str(serial)]) == 0
        assert main(["scan", "-p", "13,29", "-l", "2", "--seed", "17",
                     "--jobs", "4", "-o", str(parallel)]) == 0
        assert serial.read_bytes() == parallel.read_bytes()
