from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rsumlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSumsetCommand:
    def test_restricted_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "sumset", "--group", "Z7",
            "--A", "{1,2,3}", "--B", "{1,2,3}", "--S", "{0}",
        )
        assert code == 0
        assert out == "{3,4,5}\nsize=3\n"

    def test_plain_when_s_omitted(self, capsys):
        code, out, _ = run_cli(capsys, "sumset", "--group", "Z5", "--A", "{0,1}", "--B", "{0,2}")
        assert code == 0
        assert out.splitlines()[0] == "{0,1,2,3}"

    def test_twisted(self, capsys):
        code, out, _ = run_cli(
            capsys, "sumset", "--group", "Z5", "--A", "{0,1,2}", "--B", "{0,1}",
            "--S", "{0}", "--gamma", "2",
        )
        assert code == 0
        assert out == "{1,2}\nsize=2\n"

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "sumset", "--group", "Z7", "--A", "{1,2,3}", "--B", "{1,2,3}",
            "--S", "{0}", "--format", "json",
        )
        assert code == 0
        assert json.loads(out) == {"group": "Z7", "result": "{3,4,5}", "size": 3}

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "sumset", "--group", "Z7", "--A", "{1,9}", "--B", "{1}")
        assert code == 2
        assert "rsumlab:" in err


class TestVerifyCommand:
    def test_thm1_json_no_violations(self, capsys):
        code, out, err = run_cli(
            capsys, "verify", "--group", "Z5", "--bound", "thm1",
            "--max-s", "1", "--format", "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["violations"] == []
        assert data["violation_count"] == 0
        assert data["triples_checked"] == 31 * 31 * 5
        assert "estimated triples" in err

    def test_unknown_bound_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--group", "Z5", "--bound", "nosuch")
        assert code == 2
        assert "nosuch" in err

    def test_shard_counts_byte_identical(self, capsys):
        outputs = set()
        for shards in ("1", "2", "8"):
            code, out, _ = run_cli(
                capsys, "verify", "--group", "Z7", "--bound", "pansun",
                "--max-s", "1", "--format", "json", "--shards", shards, "--no-timing",
            )
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

    def test_repeat_invocation_byte_identical(self, capsys):
        args = ("verify", "--group", "Z2xZ4", "--bound", "thm1", "--max-s", "2",
                "--format", "json", "--no-timing", "--seed", "5")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_sampled_seeded(self, capsys):
        args = ("verify", "--group", "Z12", "--bound", "kneser", "--sample", "200",
                "--seed", "7", "--format", "json", "--no-timing")
        code, out1, _ = run_cli(capsys, *args)
        assert code == 0
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_s_free_bounds_default_to_empty_s(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--group", "Z5", "--bound", "cd", "--bound", "kneser",
            "--format", "json", "--no-timing",
        )
        assert code == 0
        data = json.loads(out)
        assert data["constraints"]["s_size"] == [0, 0]
        assert data["triples_checked"] == 31 * 31

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--group", "Z5", "--bound", "pansun", "--max-s", "1",
            "--format", "csv", "--max-witnesses", "2",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "group,kind,A,B,S,gamma,lhs,rhs,tight"

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "summary.json"
        code, out, _ = run_cli(
            capsys, "verify", "--group", "Z5", "--bound", "thm1", "--max-s", "1",
            "--format", "json", "--out", str(path),
        )
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["violation_count"] == 0

    def test_work_ceiling_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--group", "Z16", "--bound", "ppow", "--max-s", "3",
        )
        assert code == 2
        assert "ceiling" in err

    def test_threads_env(self, capsys, monkeypatch):
        monkeypatch.setenv("RSUMLAB_THREADS", "2")
        code, out, _ = run_cli(
            capsys, "verify", "--group", "Z7", "--bound", "pansun", "--max-s", "1",
            "--shards", "2", "--format", "json", "--no-timing",
        )
        assert code == 0
        assert json.loads(out)["violation_count"] == 0


class TestSearchCommand:
    def test_tight_text(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "--group", "Z7", "--bound", "pansun", "--mode", "tight",
            "--max-s", "1", "--max-witnesses", "5",
        )
        assert code == 0
        assert "found=5" in out.splitlines()[0]
        assert out.count("TIGHT") == 5

    def test_counterexample_found_exit_1(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "--group", "Z5", "--bound", "anr",
            "--mode", "counterexample",
        )
        assert code == 1
        assert "COUNTEREXAMPLE" in out

    def test_counterexample_empty_exit_0(self, capsys):
        code, out, _ = run_cli(
            capsys, "search", "--group", "Z5", "--bound", "thm1",
            "--mode", "counterexample", "--max-s", "1",
        )
        assert code == 0
        assert "found=0" in out


class TestStructureCommands:
    def test_decompose(self, capsys):
        code, out, _ = run_cli(
            capsys, "decompose", "--group", "Z6", "--set", "{0,1,3}", "--subgroup", "{0,3}",
        )
        assert code == 0
        assert out.splitlines() == [
            "subgroup={0,3} parts=2",
            "part rep=0 fiber={0,3}",
            "part rep=1 fiber={0}",
        ]

    def test_decompose_bad_subgroup_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "decompose", "--group", "Z6", "--set", "{0}", "--subgroup", "{0,1}",
        )
        assert code == 2
        assert "closed" in err

    def test_stabilizer(self, capsys):
        code, out, _ = run_cli(capsys, "stabilizer", "--group", "Z4", "--set", "{0,2}")
        assert code == 0
        assert out == "{0,2}\norder=2\n"

    def test_classify(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--group", "Z7", "--A", "{4}", "--B", "{1,2,5}")
        assert code == 0
        assert "singleton side=A" in out

    def test_classify_not_critical_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "classify", "--group", "Z7", "--A", "{0,1}", "--B", "{0,3}")
        assert code == 2
        assert "critical" in err

    def test_sdr(self, capsys):
        code, out, _ = run_cli(
            capsys, "sdr", "--group", "Z7", "--A", "{0,1,2,3}", "--B", "{0,1,2,3}",
            "--S", "{0}", "--variant", "lemma22",
        )
        assert code == 0
        assert "length=1" in out.splitlines()[0]

    def test_sdr_hypothesis_violation_exit_2(self, capsys):
        code, _, err = run_cli(
            capsys, "sdr", "--group", "Z7", "--A", "{0,1,2}", "--B", "{0,1}",
            "--S", "{0}", "--variant", "lemma22",
        )
        assert code == 2
        assert ">=" in err

    def test_json_formats(self, capsys):
        for argv in (
            ("decompose", "--group", "Z6", "--set", "{0,1,3}", "--subgroup", "{0,3}"),
            ("stabilizer", "--group", "Z4", "--set", "{0,2}"),
            ("classify", "--group", "Z7", "--A", "{4}", "--B", "{1,2,5}"),
            ("sdr", "--group", "Z5", "--A", "{0,1}", "--B", "{0,2}", "--variant", "lemma32"),
        ):
            code, out, _ = run_cli(capsys, *argv, "--format", "json")
            assert code == 0
            json.loads(out)


class TestHelp:
    def test_subcommand_help_names_constructs(self, capsys):
        for cmd, needle in (
            ("verify", "Cauchy-Davenport"),
            ("sumset", "restricted sumset"),
            ("decompose", "cosets"),
            ("stabilizer", "Kneser"),
            ("classify", "inverse-theorem"),
            ("sdr", "index windows"),
            ("search", "counterexample"),
        ):
            with pytest.raises(SystemExit) as exc:
                main([cmd, "--help"])
            assert exc.value.code == 0
            flat = " ".join(capsys.readouterr().out.split())
            assert needle in flat, cmd

    def test_entry_point_roundtrip(self):
        proc = subprocess.run(
            [sys.executable, "-m", "rsumlab", "sumset", "--group", "Z7",
             "--A", "{1,2,3}", "--B", "{1,2,3}", "--S", "{0}"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "{3,4,5}\nsize=3\n"

    def test_missing_subcommand_exit_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "rsumlab"], capture_output=True, text=True
        )
        assert proc.returncode == 2
