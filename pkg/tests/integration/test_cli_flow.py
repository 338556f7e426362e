"""End-to-end CLI runs over model files, word files and report files."""

from __future__ import annotations

import csv
import json

import pytest

from ergodic_lab.cli import main
from ergodic_lab.sampler import read_words, sample_word, write_words
from ergodic_lab.measures import load_model_file
from ergodic_lab.schemas.word import BinaryWord

FAIR = {"type": "bernoulli", "p": 0.5}
MARKOV = {"type": "markov", "P": [[0.9, 0.1], [0.5, 0.5]]}
MIXTURE = {
    "type": "mixture",
    "weights": [0.5, 0.5],
    "components": [{"type": "bernoulli", "p": 0.1}, {"type": "bernoulli", "p": 0.9}],
}


def read_csv(path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def error_records(err: str) -> list[dict]:
    return [json.loads(line) for line in err.splitlines() if line.startswith("{")]


class TestEntropyCommand:
    def test_fair_coin_table(self, write_model, tmp_path) -> None:
        out = tmp_path / "entropy.csv"
        code = main(["entropy", "--model", str(write_model(FAIR)), "--n", "8", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,H_n,H_n_over_n,increment"
        assert lines[1] == "1,1.0,1.0,1.0"
        assert len(lines) == 9

    def test_default_n_runs(self, write_model, tmp_path) -> None:
        out = tmp_path / "entropy.csv"
        assert main(["entropy", "--model", str(write_model(FAIR)), "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 13

    def test_budget_exit_code(self, write_model, capsys) -> None:
        code = main(["entropy", "--model", str(write_model(FAIR)), "--n", "30"])
        assert code == 3
        assert error_records(capsys.readouterr().err)[0]["error"] == "BudgetExceeded"

    def test_invalid_model_exit_code(self, write_model, capsys) -> None:
        bad = {"type": "markov", "P": [[0.8, 0.1], [0.5, 0.5]]}
        code = main(["entropy", "--model", str(write_model(bad)), "--n", "4"])
        assert code == 2
        record = error_records(capsys.readouterr().err)[0]
        assert record["error"] == "ModelValidationError"
        assert "row 0" in record["message"]
        assert record["field"] == "markov.P.0"

    def test_missing_model_file(self, tmp_path, capsys) -> None:
        code = main(["entropy", "--model", str(tmp_path / "absent.json")])
        assert code == 4
        assert error_records(capsys.readouterr().err)[0]["error"] == "IoFailure"


class TestSampleCommand:
    def test_stdout_words(self, write_model, capsys) -> None:
        path = write_model(FAIR)
        code = main(["sample", "--model", str(path), "--n", "16", "--replicas", "2", "--seed", "5"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        model = load_model_file(path)
        assert lines == [str(sample_word(model, 16, 5, r)) for r in range(2)]

    def test_packed_file(self, write_model, tmp_path) -> None:
        out = tmp_path / "words.bin"
        args = ["sample", "--model", str(write_model(MARKOV)), "--n", "100", "--replicas", "3"]
        assert main([*args, "--packed", "--out", str(out)]) == 0
        words = read_words(out, packed=True)
        assert len(words) == 3
        assert all(w.length == 100 for w in words)

    def test_packed_needs_out(self, write_model) -> None:
        assert main(["sample", "--model", str(write_model(FAIR)), "--packed"]) == 2


class TestSmbReport:
    def test_replicas_concatenated_and_reproducible(self, write_model, tmp_path) -> None:
        model = str(write_model(MARKOV))
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["smb-report", "--model", model, "--n", "256", "--grid", "64:2:3"]
        assert main([*base, "--replicas", "3", "--seed", "11", "--out", str(first)]) == 0
        assert main([*base, "--replicas", "3", "--seed", "11", "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        rows = read_csv(first)
        assert [int(r["n"]) for r in rows] == [64, 128, 256] * 3
        assert float(rows[0]["target"]) == pytest.approx(0.5574963279910677, abs=1e-10)

    def test_unknown_target_for_mixed_rates(self, write_model, tmp_path) -> None:
        model = {
            "type": "mixture",
            "weights": [0.5, 0.5],
            "components": [{"type": "bernoulli", "p": 0.1}, {"type": "bernoulli", "p": 0.5}],
        }
        out = tmp_path / "m.csv"
        args = ["smb-report", "--model", str(write_model(model)), "--n", "128", "--grid", "64:2:2"]
        assert main([*args, "--out", str(out)]) == 0
        rows = read_csv(out)
        assert rows[0]["target"] == "unknown"
        assert rows[0]["abs_error"] == "n/a"

    def test_json_format(self, write_model, tmp_path) -> None:
        out = tmp_path / "r.json"
        args = ["smb-report", "--model", str(write_model(FAIR)), "--n", "128", "--grid", "32:2:3"]
        assert main([*args, "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["schema"] == ["n", "estimate", "target", "abs_error"]
        assert data["metadata"]["replicas"] == 1
        assert [row["estimate"] for row in data["rows"]] == [1.0, 1.0, 1.0]

    def test_input_words(self, write_model, tmp_path) -> None:
        words = tmp_path / "x.txt"
        write_words([BinaryWord("0" * 64)], words)
        out = tmp_path / "r.csv"
        args = ["smb-report", "--model", str(write_model(FAIR)), "--input", str(words)]
        assert main([*args, "--n", "64", "--grid", "16:2:3", "--out", str(out)]) == 0
        assert [r["estimate"] for r in read_csv(out)] == ["1.0", "1.0", "1.0"]


class TestAnalysisCommands:
    def test_fk(self, write_model, tmp_path) -> None:
        out = tmp_path / "fk.csv"
        assert main(["fk", "--model", str(write_model(MARKOV)), "--K", "8", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert [int(r["k"]) for r in rows] == list(range(9))

    def test_dimension_without_model(self, tmp_path) -> None:
        words = tmp_path / "zeros.txt"
        write_words([BinaryWord("0" * 4096)], words)
        out = tmp_path / "dim.csv"
        args = ["dimension", "--input", str(words), "--grid", "256:2:5", "--out", str(out)]
        assert main(args) == 0
        rows = read_csv(out)
        assert [int(r["n"]) for r in rows] == [256, 512, 1024, 2048, 4096]
        assert float(rows[-1]["rate"]) == pytest.approx(601 / 4096)

    def test_deficiency(self, write_model, tmp_path) -> None:
        words = tmp_path / "zeros.bin"
        write_words([BinaryWord("0" * 4096)], words, packed=True)
        out = tmp_path / "def.csv"
        args = ["deficiency", "--model", str(write_model(FAIR)), "--input", str(words), "--packed"]
        assert main([*args, "--grid", "4096:2:1", "--out", str(out)]) == 0
        row = read_csv(out)[0]
        assert float(row["deficiency"]) == 3495.0

    def test_deficiency_null_prefix(self, write_model, tmp_path) -> None:
        words = tmp_path / "x.txt"
        write_words([BinaryWord("0" * 64)], words)
        args = ["deficiency", "--model", str(write_model({"type": "bernoulli", "p": 1.0}))]
        assert main([*args, "--input", str(words), "--grid", "16:2:2"]) == 1

    def test_invariance_failure_reported(self, write_model, tmp_path) -> None:
        model = {**MARKOV, "pi": [1.0, 0.0], "allow_nonstationary": True}
        out = tmp_path / "inv.csv"
        args = ["invariance", "--model", str(write_model(model)), "--depth", "4"]
        assert main([*args, "--out", str(out)]) == 0
        sidecar = json.loads((tmp_path / "inv.summary.json").read_text())
        assert sidecar["metadata"]["passed"] is False
        assert float(read_csv(out)[0]["abs_violation"]) == pytest.approx(0.1, abs=1e-12)

    def test_invariance_budget(self, write_model) -> None:
        assert main(["invariance", "--model", str(write_model(FAIR)), "--depth", "30"]) == 3

    def test_correlation(self, write_model, tmp_path) -> None:
        out = tmp_path / "corr.csv"
        args = ["correlation", "--model", str(write_model(MIXTURE)), "--n", "500"]
        assert main([*args, "--grid", "100:5:2", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert [int(r["n"]) for r in rows] == [100, 500]
        assert float(rows[-1]["estimate"]) == pytest.approx(0.41018, abs=1e-9)
        assert float(rows[-1]["target"]) == pytest.approx(0.25)

    def test_split(self, write_model, tmp_path) -> None:
        out = tmp_path / "split.csv"
        args = ["split", "--model", str(write_model(MARKOV)), "--n", "1000", "--K", "4"]
        assert main([*args, "--grid", "250:2:3", "--out", str(out)]) == 0
        rows = read_csv(out)
        assert [int(r["n"]) for r in rows] == [250, 500, 1000]
        for row in rows:
            total = float(row["total"])
            parts = float(row["birkhoff_term"]) + float(row["error_term"])
            assert total == pytest.approx(parts, abs=1e-12)


class TestSummarizeCommand:
    def test_summarize_replicas(self, write_model, tmp_path, capsys) -> None:
        model = str(write_model(MARKOV))
        reports = []
        for seed in (1, 2):
            out = tmp_path / f"r{seed}.csv"
            args = ["smb-report", "--model", model, "--n", "4096", "--grid", "1024:2:3"]
            assert main([*args, "--seed", str(seed), "--out", str(out)]) == 0
            reports.append(str(out))
        capsys.readouterr()
        assert main(["summarize", *reports]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert [row["n"] for row in summary["per_n"]] == [1024, 2048, 4096]
        assert all(row["count"] == 2 for row in summary["per_n"])

    def test_schema_mismatch(self, write_model, tmp_path) -> None:
        conv, fk = tmp_path / "c.csv", tmp_path / "fk.csv"
        model = str(write_model(FAIR))
        assert main(["smb-report", "--model", model, "--n", "64", "--out", str(conv)]) == 0
        assert main(["fk", "--model", model, "--K", "4", "--out", str(fk)]) == 0
        assert main(["summarize", str(conv), str(fk)]) == 2
