"""End-to-end command behavior: outputs, determinism, exit codes."""

import json

import pytest

from sheafloci.cli import console_main
from sheafloci.poly import parse_homogeneous

CONIC_D5 = {
    "degree": 5,
    "simple": [["1", str(t), str(t * t)] for t in range(6)],
    "fat": [],
}

# seven simple points plus one triple point, length 7 + 3 = 10
DEEP_D6 = {
    "degree": 6,
    "simple": [
        ["1", "0", "0"],
        ["0", "1", "0"],
        ["0", "0", "1"],
        ["0", "1", "1"],
        ["0", "1", "-1"],
        ["1", "-2", "0"],
        ["1", "2", "-1"],
    ],
    "fat": [
        {
            "support": ["1", "3", "2"],
            "chart": [["1", "0", "0"], ["-3", "1", "0"], ["-2", "0", "1"]],
            "h": ["1", "1"],
            "mult": 3,
        }
    ],
}


def run(capsys, *argv):
    code = console_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


class TestRandom:
    def test_deterministic_bytes(self, capsys):
        code1, out1, _ = run(capsys, "random", "--degree", "5", "--seed", "42")
        code2, out2, _ = run(capsys, "random", "--degree", "5", "--seed", "42")
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.endswith("\n")

    def test_seed_changes_output(self, capsys):
        _, out1, _ = run(capsys, "random", "--degree", "5", "--seed", "1")
        _, out2, _ = run(capsys, "random", "--degree", "5", "--seed", "2")
        assert out1 != out2

    def test_double_stratum(self, capsys, tmp_path):
        out = tmp_path / "cfg.json"
        code, stdout, _ = run(
            capsys, "random", "--degree", "4", "--seed", "9",
            "--stratum", "double", "--out", str(out),
        )
        assert code == 0
        assert stdout == ""
        payload = json.loads(out.read_text())
        assert len(payload["fat"]) == 1


class TestAnalyze:
    def test_report_round_trip(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "4", "--seed", "3", "--out", str(cfg))
        code, out, _ = run(capsys, "analyze", "--config", str(cfg))
        assert code == 0
        report = json.loads(out)
        assert report["fibre_dim"] == 11
        assert [p["codim"] for p in report["points"]] == [2, 2, 2]
        assert report["violations"] == []

    def test_deterministic_bytes(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "5", "--seed", "8", "--out", str(cfg))
        _, out1, _ = run(capsys, "analyze", "--config", str(cfg))
        _, out2, _ = run(capsys, "analyze", "--config", str(cfg))
        assert out1 == out2

    def test_jobs_do_not_change_output(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "5", "--seed", "8", "--out", str(cfg))
        _, out1, _ = run(capsys, "analyze", "--config", str(cfg), "--jobs", "1")
        _, out3, _ = run(capsys, "analyze", "--config", str(cfg), "--jobs", "3")
        assert out1 == out3

    def test_subset_flag(self, capsys, tmp_path):
        cfg = tmp_path / "ref.json"
        run(capsys, "verify-remark6", "--emit-config", str(cfg))
        code, out, _ = run(
            capsys, "analyze", "--config", str(cfg),
            "--subset", "1,2,3,4", "--subset", "1,2,3,4,5",
        )
        assert code == 0
        report = json.loads(out)
        got = {tuple(s["ids"]): s["codim"] for s in report["subsets"]}
        assert got == {(1, 2, 3, 4): 8, (1, 2, 3, 4, 5): 9}

    def test_degree_mismatch_is_usage_error(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "4", "--seed", "3", "--out", str(cfg))
        code, _, err = run(capsys, "analyze", "--config", str(cfg), "--degree", "5")
        assert code == 1
        assert "does not match" in err

    def test_out_writes_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        report = tmp_path / "report.json"
        run(capsys, "random", "--degree", "4", "--seed", "3", "--out", str(cfg))
        code, out, _ = run(
            capsys, "analyze", "--config", str(cfg), "--out", str(report)
        )
        assert code == 0 and out == ""
        text = report.read_text()
        assert text.endswith("\n")
        json.loads(text)


class TestGenericityExit:
    def test_conic_exits_two_with_certificate(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "conic.json", CONIC_D5)
        code, out, _ = run(capsys, "analyze", "--config", cfg)
        assert code == 2
        payload = json.loads(out)
        assert payload["error"] == "genericity"
        cert = parse_homogeneous(payload["certificate"])
        assert cert.degree == 2
        for t in range(6):
            assert cert.eval((1, t, t * t)) == 0


class TestDeepStratumExit:
    def test_triple_point_exits_three_with_report(self, capsys, tmp_path):
        cfg = write_json(tmp_path / "deep.json", DEEP_D6)
        code, out, err = run(capsys, "analyze", "--config", cfg)
        assert code == 3
        report = json.loads(out)
        assert report["stratum"] == "deep"
        assert report["points"][-1]["kind"] == "fat"
        assert "not asserted" in err


class TestVerifyRemark6:
    def test_reference_passes(self, capsys):
        code, out, _ = run(capsys, "verify-remark6")
        assert code == 0
        assert "59 of 59 checks passed" in out
        assert "FAIL" not in out

    def test_emitted_config_verifies(self, capsys, tmp_path):
        cfg = tmp_path / "ref.json"
        code, _, _ = run(capsys, "verify-remark6", "--emit-config", str(cfg))
        assert code == 0
        code, out, _ = run(capsys, "verify-remark6", "--config", str(cfg))
        assert code == 0 and "59 of 59" in out

    def test_mutated_config_fails(self, capsys, tmp_path):
        cfg = tmp_path / "ref.json"
        run(capsys, "verify-remark6", "--emit-config", str(cfg))
        payload = json.loads(cfg.read_text())
        payload["simple"][4] = ["1", "5", "7"]
        mutated = write_json(tmp_path / "mut.json", payload)
        code, out, _ = run(capsys, "verify-remark6", "--config", mutated)
        assert code == 1
        assert "FAIL: subset (1,2,3,4,5) codim 9" in out


class TestKronecker:
    def test_payload(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "5", "--seed", "4", "--out", str(cfg))
        code, out, _ = run(capsys, "kronecker", "--config", str(cfg))
        assert code == 0
        payload = json.loads(out)
        assert payload["injective"] is True and payload["stable"] is True
        assert len(payload["phi"]) == 4
        assert all(len(row) == 3 for row in payload["phi"])


class TestLocalFree:
    def test_flag_route(self, capsys):
        code, out, _ = run(
            capsys, "localfree", "--poly", "x*y", "--mult", "2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["free"] is False and payload["jet_free"] is False

    def test_file_route_matches_flags(self, capsys, tmp_path):
        query = {"f": "x^2 - y^3 + x*y^2", "h": ["0", "2"], "mult": 2}
        path = write_json(tmp_path / "q.json", query)
        _, out_file, _ = run(capsys, "localfree", "--in", path)
        _, out_flags, _ = run(
            capsys, "localfree", "--poly", query["f"], "--h", "0,2", "--mult", "2"
        )
        assert out_file == out_flags

    def test_both_routes_rejected(self, capsys, tmp_path):
        path = write_json(tmp_path / "q.json", {"f": "x*y", "h": ["0"], "mult": 2})
        code, _, err = run(
            capsys, "localfree", "--in", path, "--poly", "x*y"
        )
        assert code == 1 and "not both" in err

    def test_missing_mult_rejected(self, capsys):
        code, _, err = run(capsys, "localfree", "--poly", "x*y")
        assert code == 1 and "--mult" in err

    def test_bad_poly_is_exit_one(self, capsys):
        code, _, err = run(
            capsys, "localfree", "--poly", "x +* y", "--mult", "2"
        )
        assert code == 1 and "error" in err


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "nonsense")
        assert code == 1
        assert "invalid choice" in err

    def test_missing_config_file(self, capsys):
        code, _, err = run(capsys, "analyze", "--config", "/nonexistent.json")
        assert code == 1

    def test_invalid_json_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "analyze", "--config", str(path))
        assert code == 1 and "JSON" in err

    def test_schema_violation_is_exit_one(self, capsys, tmp_path):
        path = write_json(tmp_path / "bad.json", {"degree": 4, "simple": []})
        code, _, err = run(capsys, "analyze", "--config", str(path))
        assert code == 1 and "fat" in err

    def test_bad_subset_text(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        run(capsys, "random", "--degree", "4", "--seed", "3", "--out", str(cfg))
        code, _, err = run(
            capsys, "analyze", "--config", str(cfg), "--subset", "1,two"
        )
        assert code == 1 and "subset" in err

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "analyze" in out
