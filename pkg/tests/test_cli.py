from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from rfidsim import cli, stats

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def free_space(tmp_path):
    return str(SCENARIOS / "free_space.json")


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBatchRun:
    def test_csv_export(self, free_space, tmp_path, capsys):
        out = tmp_path / "out.csv"
        code, stdout, _ = run_cli(["--scenario", free_space, "--ticks", "100", "--csv", str(out)], capsys)
        assert code == 0
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 101  # header + 100 ticks x 1 tag
        assert "tag t1" in stdout

    def test_free_space_mean_error_tiny(self, free_space, tmp_path, capsys):
        code, stdout, _ = run_cli(["--scenario", free_space, "--ticks", "50"], capsys)
        assert code == 0
        mean = float(stdout.split("mean=")[1].split(" ")[0])
        assert mean < 1e-9

    def test_json_export_round_trips(self, free_space, tmp_path, capsys):
        out = tmp_path / "trace.json"
        code, _, _ = run_cli(["--scenario", free_space, "--ticks", "10", "--json", str(out)], capsys)
        assert code == 0
        trace = stats.import_json(out)
        assert len(trace) == 10

    def test_overrides(self, free_space, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli(["--scenario", free_space, "--ticks", "10", "--noise", "0.5", "--seed", "1", "--json", str(a)], capsys)
        run_cli(["--scenario", free_space, "--ticks", "10", "--noise", "0.5", "--seed", "2", "--json", str(b)], capsys)
        assert stats.import_json(a) != stats.import_json(b)


class TestFailures:
    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json\n  at all }")
        code, _, stderr = run_cli(["--scenario", str(bad), "--ticks", "1"], capsys)
        assert code == 1
        assert "line" in stderr

    def test_invalid_scenario(self, tmp_path, capsys):
        doc = json.loads((SCENARIOS / "free_space.json").read_text())
        doc["readers"] = doc["readers"][:3]
        bad = tmp_path / "three_readers.json"
        bad.write_text(json.dumps(doc))
        code, _, stderr = run_cli(["--scenario", str(bad), "--ticks", "1"], capsys)
        assert code == 1
        assert "reader" in stderr

    def test_missing_file(self, capsys):
        code, _, stderr = run_cli(["--scenario", "/does/not/exist.json"], capsys)
        assert code == 2

    def test_unwritable_csv(self, free_space, capsys):
        code, _, stderr = run_cli(
            ["--scenario", free_space, "--ticks", "1", "--csv", "/nonexistent-dir/x.csv"], capsys
        )
        assert code == 2

    def test_no_scenario(self, capsys, monkeypatch):
        monkeypatch.delenv("RFIDSIM_SCENARIO", raising=False)
        code, _, stderr = run_cli([], capsys)
        assert code == 1


class TestEnvOverrides:
    def test_env_scenario(self, free_space, monkeypatch, capsys):
        monkeypatch.setenv("RFIDSIM_SCENARIO", free_space)
        monkeypatch.setenv("RFIDSIM_TICKS", "5")
        parser = cli.build_parser()
        args = parser.parse_args([])
        assert args.scenario == free_space
        assert args.ticks == 5

    def test_flag_beats_env(self, free_space, monkeypatch):
        monkeypatch.setenv("RFIDSIM_TICKS", "5")
        args = cli.build_parser().parse_args(["--ticks", "9"])
        assert args.ticks == 9
