"""Command-line interface: reports, exit codes, determinism, corpus checks."""

import json
from importlib import resources

import jsonschema
import pytest

from stabkit.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, execute_job, main

QUARTIC_PAIR = {
    "rank": 1,
    "weights_v": [[4], [2], [0], [-2], [-4]],
    "weights_w": [[0]],
    "v": [1, 0, 0, 0, 0],
    "w": [1],
}

CHECK_JOB = {"schema_version": 1, "kind": "pairs.check", "payload": QUARTIC_PAIR}

GROEBNER_JOB = {
    "schema_version": 1,
    "kind": "algebra.groebner",
    "payload": {
        "variables": ["x", "y", "z"],
        "generators": ["x^2 - y", "x*y - z"],
        "eliminate": ["x"],
    },
}


def write_job(tmp_path, document, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document))
    return path


def run_cli(tmp_path, capsys, document, *flags):
    path = write_job(tmp_path, document)
    code = main(["run", str(path), *flags])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_report_envelope(self, tmp_path, capsys):
        code, out, err = run_cli(tmp_path, capsys, CHECK_JOB)
        assert code == EXIT_OK
        assert err == ""
        report = json.loads(out)
        assert report["schema_version"] == 1
        assert report["kind"] == "pairs.check"
        assert report["verdict"] == "unstable"
        assert report["certificate"]["exponents"] == [1]
        assert report["certificate"]["mu"] == "-4"
        assert report["modules"] == {"stabkit": "0.1.0"}
        assert report["timing"] is None
        assert set(report["budget"]) == {"limit", "used"}

    def test_report_matches_schema(self, tmp_path, capsys):
        code, out, _ = run_cli(tmp_path, capsys, GROEBNER_JOB)
        assert code == EXIT_OK
        schema = json.loads(
            resources.files("stabkit").joinpath("schemas/report-v1.schema.json").read_text()
        )
        jsonschema.validate(json.loads(out), schema)

    def test_byte_identical_reruns(self, tmp_path, capsys):
        path = write_job(tmp_path, GROEBNER_JOB)
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert main(["run", str(path), "--out", str(out1)]) == EXIT_OK
        assert main(["run", str(path), "--out", str(out2)]) == EXIT_OK
        capsys.readouterr()
        assert out1.read_bytes() == out2.read_bytes()

    def test_elimination_golden(self, tmp_path, capsys):
        code, out, _ = run_cli(tmp_path, capsys, GROEBNER_JOB)
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["values"]["variables"] == ["y", "z"]
        assert report["values"]["basis"] == ["y^3 - z^2"]

    def test_model_df_golden(self, tmp_path, capsys):
        job = {
            "schema_version": 1,
            "kind": "model.df",
            "payload": {"a0": 1, "a1": 2, "b0": "-2/3", "b1": "-3/2"},
        }
        code, out, _ = run_cli(tmp_path, capsys, job)
        assert code == EXIT_OK
        assert json.loads(out)["values"]["df"] == "1/6"

    def test_toric_df_golden(self, tmp_path, capsys):
        job = {
            "schema_version": 1,
            "kind": "toric.df",
            "payload": {
                "polytope": {"vertices": [[0], [1]]},
                "pieces": [
                    {"gradient": [0], "constant": 0},
                    {"gradient": [2], "constant": -1},
                ],
            },
        }
        code, out, _ = run_cli(tmp_path, capsys, job)
        assert code == EXIT_OK
        assert json.loads(out)["values"]["df"] == "1/4"

    def test_timing_flag(self, tmp_path, capsys):
        code, out, _ = run_cli(tmp_path, capsys, CHECK_JOB, "--timing")
        assert code == EXIT_OK
        timing = json.loads(out)["timing"]
        assert isinstance(timing["milliseconds"], int)

    def test_seed_echo_and_default(self, tmp_path, capsys):
        payload = {
            "group": {"kind": "torus", "size": 1},
            "rep_v": {"kind": "torus-weights", "weights": [[4], [2], [0], [-2], [-4]]},
            "rep_w": {"kind": "torus-weights", "weights": [[0]]},
            "v": [1, 0, 0, 0, 0],
            "w": [1],
        }
        job = {"schema_version": 1, "kind": "pairs.falsify", "payload": payload}
        code, out, _ = run_cli(tmp_path, capsys, job)
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["seed"] == 0
        assert report["verdict"] == "destabilized"
        code, out, _ = run_cli(tmp_path, capsys, job, "--seed", "7")
        assert json.loads(out)["seed"] == 7

    def test_budget_exhaustion_exit_code(self, tmp_path, capsys):
        code, out, err = run_cli(tmp_path, capsys, GROEBNER_JOB, "--budget", "3")
        assert code == EXIT_BUDGET
        assert out == ""
        assert "budget" in err

    def test_malformed_polynomial(self, tmp_path, capsys):
        bad = {
            "schema_version": 1,
            "kind": "algebra.groebner",
            "payload": {"variables": ["x"], "generators": ["x +* 1"]},
        }
        code, out, err = run_cli(tmp_path, capsys, bad)
        assert code == EXIT_INVALID
        assert "position" in err

    def test_unknown_kind(self, tmp_path, capsys):
        code, _, err = run_cli(
            tmp_path, capsys, {"schema_version": 1, "kind": "nope", "payload": {}}
        )
        assert code == EXIT_INVALID
        assert "invalid job document" in err

    def test_float_payload_rejected(self, tmp_path, capsys):
        job = {
            "schema_version": 1,
            "kind": "model.df",
            "payload": {"a0": 1.5, "a1": 2, "b0": 0, "b1": 0},
        }
        code, _, err = run_cli(tmp_path, capsys, job)
        assert code == EXIT_INVALID

    def test_unreadable_and_unparsable_documents(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "missing.json")]) == EXIT_INVALID
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        assert main(["run", str(broken)]) == EXIT_INVALID
        capsys.readouterr()

    def test_missing_subcommand_exits(self):
        with pytest.raises(SystemExit):
            main([])


class TestExecuteJob:
    def test_returns_report_dict(self):
        report = execute_job(CHECK_JOB)
        assert report["verdict"] == "unstable"
        assert report["budget"]["limit"] > 0

    def test_budget_override_echoed(self):
        report = execute_job(GROEBNER_JOB, budget_override=5000)
        assert report["budget"]["limit"] == 5000
        assert 0 < report["budget"]["used"] <= 5000

    def test_semistable_witness(self):
        job = {
            "schema_version": 1,
            "kind": "pairs.check",
            "payload": {
                "rank": 1,
                "weights_v": [[0], [2]],
                "weights_w": [[1]],
                "v": [1, 1],
                "w": [1],
            },
        }
        report = execute_job(job)
        assert report["verdict"] == "semistable"
        witness = report["certificate"]["containment"][0]
        assert witness["coefficients"] == ["1/2", "1/2"]

    def test_oracle_verdict(self):
        job = {
            "schema_version": 1,
            "kind": "locus.oracle",
            "payload": {
                "group": {"kind": "torus", "size": 1},
                "action": {"kind": "torus-weights", "weights": [[1], [-1]]},
                "space": ["x1", "y1"],
                "limit": ["x2", "y2"],
                "variety": [],
                "target": ["x1"],
                "projective": True,
                "point": [1, 0],
            },
        }
        report = execute_job(job)
        assert report["verdict"] == "does-not-degenerate"


class TestCorpus:
    def corpus_dir(self, tmp_path, entries, name="batch.json"):
        d = tmp_path / "corpus"
        d.mkdir(exist_ok=True)
        (d / name).write_text(json.dumps(entries))
        return d

    def test_pass_and_fail_lines(self, tmp_path, capsys):
        entries = [
            {
                "id": "t-pass",
                "criterion": "A1",
                "job": CHECK_JOB,
                "expect": {"verdict": "unstable"},
            },
            {
                "id": "t-fail",
                "criterion": "A2",
                "job": GROEBNER_JOB,
                "expect": {"values": {"basis": ["wrong"]}},
            },
        ]
        d = self.corpus_dir(tmp_path, entries)
        summary_path = tmp_path / "summary.json"
        code = main(["corpus", "--corpus", str(d), "--out", str(summary_path)])
        out = capsys.readouterr().out
        assert code == 1
        assert "[t-pass] ok" in out
        assert "[t-fail] FAIL" in out
        assert "A1 PASS (1/1)" in out
        assert "A2 FAIL (0/1)" in out
        summary = json.loads(summary_path.read_text())
        assert summary["criteria"] == {"A1": True, "A2": False}

    def test_expectations_are_deep_subsets(self, tmp_path, capsys):
        entries = [
            {
                "id": "subset",
                "criterion": "A1",
                "job": CHECK_JOB,
                "expect": {
                    "verdict": "unstable",
                    "certificate": {"mu": "-4"},
                    "budget": {"limit": 100000},
                },
            }
        ]
        d = self.corpus_dir(tmp_path, entries)
        code = main(["corpus", "--corpus", str(d)])
        capsys.readouterr()
        assert code == EXIT_OK

    def test_crashing_entry_fails(self, tmp_path, capsys):
        entries = [
            {
                "id": "crash",
                "criterion": "A3",
                "job": {
                    "schema_version": 1,
                    "kind": "algebra.groebner",
                    "payload": {"variables": ["x"], "generators": ["y"]},
                },
                "expect": {"verdict": "ok"},
            }
        ]
        d = self.corpus_dir(tmp_path, entries)
        code = main(["corpus", "--corpus", str(d)])
        out = capsys.readouterr().out
        assert code == 1
        assert "[crash] FAIL" in out

    def test_duplicate_ids_rejected(self, tmp_path, capsys):
        entry = {
            "id": "dup",
            "criterion": "A1",
            "job": CHECK_JOB,
            "expect": {"verdict": "unstable"},
        }
        d = self.corpus_dir(tmp_path, [entry])
        (d / "again.json").write_text(json.dumps([entry]))
        code = main(["corpus", "--corpus", str(d)])
        err = capsys.readouterr().err
        assert code == EXIT_INVALID
        assert "duplicate" in err

    def test_empty_directory_rejected(self, tmp_path, capsys):
        d = tmp_path / "corpus"
        d.mkdir()
        code = main(["corpus", "--corpus", str(d)])
        capsys.readouterr()
        assert code == EXIT_INVALID

    def test_missing_directory_rejected(self, tmp_path, capsys):
        code = main(["corpus", "--corpus", str(tmp_path / "nowhere")])
        capsys.readouterr()
        assert code == EXIT_INVALID

    def test_malformed_corpus_rejected(self, tmp_path, capsys):
        d = tmp_path / "corpus"
        d.mkdir()
        (d / "bad.json").write_text(json.dumps({"not": "an array"}))
        code = main(["corpus", "--corpus", str(d)])
        capsys.readouterr()
        assert code == EXIT_INVALID
