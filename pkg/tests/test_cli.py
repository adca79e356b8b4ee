import json

import pytest

from stabkit.cli import SCHEMA_VERSION, main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


class TestCatalog:
    def test_name(self, capsys):
        status, out, _ = run(capsys, "catalog", "--name", "five")
        assert status == 0
        assert json.loads(out)["generators"][0] == "XZZXI"

    def test_list(self, capsys):
        status, out, _ = run(capsys, "catalog", "--list", "--format", "csv")
        assert status == 0
        assert len(out.splitlines()) - 1 >= 13

    def test_unknown(self, capsys):
        status, _, err = run(capsys, "catalog", "--name", "nope")
        assert status == 2 and "unknown" in err

    def test_family(self, capsys):
        status, out, _ = run(capsys, "catalog", "--name", "family2j", "--params", "j=3",
                             "--format", "structured")
        doc = json.loads(out)
        assert status == 0 and doc["schema_version"] == SCHEMA_VERSION
        assert doc["result"]["n"] == 8


class TestAnalyze:
    def test_five(self, capsys, tmp_path):
        path = tmp_path / "five.json"
        path.write_text(run(capsys, "catalog", "--name", "five")[1])
        status, out, _ = run(capsys, "analyze", "--code", str(path), "--format", "structured")
        res = json.loads(out)["result"]
        assert status == 0 and res["distance"] == 3
        assert res["A"] == [1, 0, 0, 0, 15, 0] and res["B"] == [1, 0, 0, 30, 15, 18]

    def test_self_dual_state(self, capsys):
        status, out, _ = run(capsys, "analyze", "--name", "8_0_4")
        assert status == 0 and "S == B" in out

    def test_oversized_cap(self, capsys):
        status, _, _ = run(capsys, "analyze", "--name", "25_1_9", "--cap", "25",
                           "--max-cost", "1e5")
        assert status == 3

    def test_large_code_skips_enumerators(self, capsys):
        status, out, _ = run(capsys, "analyze", "--name", "25_1_9", "--cap", "3",
                             "--format", "structured")
        res = json.loads(out)["result"]
        assert status == 0 and res["distance"] == 4 and not res["distance_exact"]
        assert res["A"] is None and res["enumerators_skipped"]

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 5,\n  "k" 1}')
        status, _, err = run(capsys, "analyze", "--code", str(path))
        assert status == 2 and "line 2" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "analyze", "--code", "/nonexistent.json")[0] == 2


class TestEncodeSynth:
    def test_encode(self, capsys):
        status, out, _ = run(capsys, "encode", "--name", "steane", "--format", "structured")
        res = json.loads(out)["result"]
        assert status == 0 and res["fidelity"] > 1 - 1e-10
        assert res["two_qubit_gates"] <= res["gate_bound"]

    def test_encode_too_large(self, capsys):
        assert run(capsys, "encode", "--name", "16_10_3")[0] == 3
        assert run(capsys, "encode", "--name", "16_10_3", "--no-certify")[0] == 0

    def test_synth(self, capsys, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("+XX\n+IX\n+ZI\n+ZZ\n")   # CNOT 0 1
        status, out, _ = run(capsys, "synth", "--tableau", str(path))
        assert status == 0 and out.startswith("QUBITS 2")

    def test_synth_bad_symbol(self, capsys, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("X\n  +Q\n")
        status, _, err = run(capsys, "synth", "--tableau", str(path))
        assert status == 2 and "line 2, column 4" in err

    def test_synth_invalid_tableau(self, capsys, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("X\nX\n")
        assert run(capsys, "synth", "--tableau", str(path))[0] == 2


class TestSimulate:
    def test_deterministic(self, capsys):
        a = run(capsys, "simulate", "--seed", "7")
        b = run(capsys, "simulate", "--seed", "7")
        assert a == b and a[0] == 0

    def test_circuit_file(self, capsys, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("QUBITS 2\nH 0\nCNOT 0 1\nMEASURE ZZ 0 1\n")
        status, out, _ = run(capsys, "simulate", "--circuit", str(path), "--format", "csv")
        assert status == 0 and out.splitlines()[1] == "0,1"

    def test_bad_circuit(self, capsys, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("QUBITS 2\nH 0\nCNOT 0 5\n")
        status, _, err = run(capsys, "simulate", "--circuit", str(path))
        assert status == 2 and "line 3" in err

    def test_toffoli_refused(self, capsys, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("TOFFOLI 0 1 2\n")
        assert run(capsys, "simulate", "--circuit", str(path))[0] == 3


class TestCapacityThreshold:
    def test_curves(self, capsys):
        status, out, _ = run(capsys, "capacity", "--curves", "--grid", "0:0.5:0.01")
        lines = out.splitlines()
        assert status == 0 and len(lines) == 52
        assert len(lines[0].split(",")) == 7

    def test_bad_grid(self, capsys):
        assert run(capsys, "capacity", "--curves", "--grid", "0:1:x")[0] == 2
        assert run(capsys, "capacity", "--curves", "--grid", "0:0.9:0.1")[0] == 2

    def test_erasure_jobs(self, capsys):
        args = ["capacity", "--n", "8", "--k", "2", "--p", "0.25", "--trials", "600",
                "--format", "csv"]
        a = run(capsys, *args, "--jobs", "1")
        b = run(capsys, *args, "--jobs", "2")
        assert a == b

    def test_depolarizing(self, capsys):
        status, out, _ = run(capsys, "capacity", "--channel", "depolarizing", "--name", "five",
                             "--p", "0.01", "0.05", "--trials", "500", "--format", "structured")
        assert status == 0 and len(json.loads(out)["result"]["results"]) == 2

    def test_threshold(self, capsys):
        status, out, _ = run(capsys, "threshold", "--mode", "gates_only", "--format",
                             "structured")
        assert status == 0
        assert json.loads(out)["result"][0]["threshold"] == pytest.approx(3.96e-5, rel=0.01)

    def test_bad_mode(self, capsys):
        assert run(capsys, "threshold", "--mode", "nope")[0] == 2
