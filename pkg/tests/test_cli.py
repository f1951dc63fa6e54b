import json
import math
import subprocess
import sys

from dncap.cli import main

MEM_EQUAL = {
    "kind": "memoryless",
    "symbols": [
        {"label": "0", "weight": "1"},
        {"label": "1", "weight": "1"},
    ],
}
MEM_UNEQUAL = {
    "kind": "memoryless",
    "symbols": [
        {"label": "0", "weight": "1"},
        {"label": "1", "weight": "2"},
    ],
}
DYCK = {"kind": "builtin", "name": "dyck_prefix"}
RLL13 = {"kind": "builtin", "name": "rll", "d": 1, "k": 3}
GOLDEN_FSM = {
    "kind": "fsm",
    "states": 2,
    "start": 0,
    "transitions": [
        {"from": 0, "label": "0", "weight": "1", "to": 0},
        {"from": 0, "label": "1", "weight": "1", "to": 1},
        {"from": 1, "label": "0", "weight": "1", "to": 0},
    ],
}


class TestEnumerate:
    def test_dyck_twelve_rows(self, tmp_spec, capsys):
        code = main(["enumerate", tmp_spec(DYCK), "--wmax", "12"])
        captured = capsys.readouterr()
        assert code == 0
        rows = [l for l in captured.out.splitlines() if l and not l.startswith("#")]
        assert len(rows) == 12
        assert rows[-1].split("\t")[:2] == ["12/1", "924"]
        assert "empirical capacity" in captured.out

    def test_powers_of_two(self, tmp_spec, capsys):
        code = main(["enumerate", tmp_spec(MEM_EQUAL), "--wmax", "5"])
        rows = [
            l for l in capsys.readouterr().out.splitlines()
            if l and not l.startswith("#")
        ]
        assert code == 0
        assert [r.split("\t")[1] for r in rows] == ["2", "4", "8", "16", "32"]

    def test_out_file(self, tmp_spec, tmp_path, capsys):
        out = tmp_path / "spectrum.tsv"
        code = main(
            ["enumerate", tmp_spec(MEM_UNEQUAL), "--wmax", "6", "--out", str(out)]
        )
        assert code == 0
        assert out.read_text().count("\n") == 7  # header + 6 rows
        assert "density" in capsys.readouterr().out

    def test_malformed_json(self, tmp_spec, capsys):
        code = main(["enumerate", tmp_spec("{not json"), "--wmax", "4"])
        assert code == 1
        assert "JSON" in capsys.readouterr().err

    def test_missing_field_is_named(self, tmp_spec, capsys):
        code = main(["enumerate", tmp_spec({"kind": "memoryless"}), "--wmax", "4"])
        assert code == 1
        assert "symbols" in capsys.readouterr().err

    def test_bad_weight_is_located(self, tmp_spec, capsys):
        doc = {
            "kind": "memoryless",
            "symbols": [{"label": "0", "weight": "zero"}],
        }
        code = main(["enumerate", tmp_spec(doc), "--wmax", "4"])
        assert code == 1
        assert "symbols[0]" in capsys.readouterr().err

    def test_dead_end_fsm_is_rejected(self, tmp_spec, capsys):
        doc = {
            "kind": "fsm",
            "states": 2,
            "start": 0,
            "transitions": [{"from": 0, "label": "a", "weight": "1", "to": 1}],
        }
        code = main(["enumerate", tmp_spec(doc), "--wmax", "4"])
        assert code == 1
        assert "dead end" in capsys.readouterr().err


class TestCapacity:
    def test_unequal_auto_uses_root(self, tmp_spec, capsys):
        code = main(["capacity", tmp_spec(MEM_UNEQUAL)])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["method"] == "characteristic_root"
        assert abs(doc["value"] - 0.481211825) < 1e-7
        assert set(doc) == {"method", "value", "bracket", "residual", "iterations"}

    def test_rll_builtin_spectral(self, tmp_spec, capsys):
        code = main(["capacity", tmp_spec(RLL13)])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["method"] == "spectral_radius"
        assert abs(doc["value"] - 0.3822) < 1e-3

    def test_dyck_auto_uses_abscissa(self, tmp_spec, capsys):
        code = main(["capacity", tmp_spec(DYCK), "--wmax", "30"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["method"] == "abscissa"

    def test_root_method_refuses_non_memoryless(self, tmp_spec, capsys):
        code = main(["capacity", tmp_spec(DYCK), "--method", "root"])
        assert code == 1
        assert "root method requires" in capsys.readouterr().err

    def test_spectral_on_memoryless_via_one_state_fsm(self, tmp_spec, capsys):
        code = main(["capacity", tmp_spec(MEM_EQUAL), "--method", "spectral"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert abs(doc["value"] - math.log(2)) < 1e-9


class TestMaxent:
    def test_level_table(self, tmp_spec, capsys):
        code = main(["maxent", tmp_spec(MEM_UNEQUAL), "--lmax", "6"])
        out = capsys.readouterr().out
        assert code == 0
        rows = [l for l in out.splitlines() if l and not l.startswith("#")]
        assert len(rows) == 6
        assert "maxent_level_rates" in out


class TestSample:
    def test_fsm_sampling_roundtrip(self, tmp_spec, capsys):
        args = ["sample", tmp_spec(GOLDEN_FSM), "--count", "5", "--steps", "12",
                "--seed", "3"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second
        rows = [l for l in first.splitlines() if not l.startswith("#")]
        assert len(rows) == 5
        assert all("11" not in row.split("\t")[0] for row in rows)

    def test_memoryless_sampling(self, tmp_spec, capsys):
        code = main(["sample", tmp_spec(MEM_EQUAL), "--count", "3", "--steps", "4",
                     "--seed", "1"])
        assert code == 0
        rows = [
            l for l in capsys.readouterr().out.splitlines() if not l.startswith("#")
        ]
        assert len(rows) == 3

    def test_generator_sampling_uses_level_fallback(self, tmp_spec, capsys):
        code = main(["sample", tmp_spec(DYCK), "--count", "4", "--steps", "6",
                     "--seed", "5"])
        assert code == 0
        rows = [
            l for l in capsys.readouterr().out.splitlines() if not l.startswith("#")
        ]
        assert len(rows) == 4
        for row in rows:
            word = row.split("\t")[0]
            balance = 0
            for ch in word:
                balance += 1 if ch == "(" else -1
                assert balance >= 0


class TestVerify:
    def test_equal_weights_pass(self, tmp_spec, capsys):
        code = main(["verify", tmp_spec(MEM_EQUAL), "--wmax", "20", "--lmax", "10",
                     "--tol", "1e-9"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["verdict"] == "PASS"
        assert doc["system"] == MEM_EQUAL

    def test_unequal_weights_pass(self, tmp_spec, capsys):
        code = main(["verify", tmp_spec(MEM_UNEQUAL), "--wmax", "20", "--lmax", "10",
                     "--tol", "1e-9"])
        assert code == 0

    def test_dyck_pass_at_forty(self, tmp_spec, capsys):
        code = main(["verify", tmp_spec(DYCK), "--wmax", "40", "--lmax", "40",
                     "--tol", "0.06"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["epsilon_probes"] == {"ae_pass": True, "io_pass": True}

    def test_fail_exit_code(self, tmp_spec, capsys):
        code = main(["verify", tmp_spec(GOLDEN_FSM), "--wmax", "15", "--lmax", "8",
                     "--tol", "1e-9"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 2
        assert doc["verdict"] == "FAIL"


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_required_flag(self, tmp_spec, capsys):
        assert main(["enumerate", tmp_spec(MEM_EQUAL)]) == 1

    def test_module_entry_point(self, tmp_spec):
        result = subprocess.run(
            [sys.executable, "-m", "dncap.cli", "capacity", tmp_spec(MEM_EQUAL)],
            capture_output=True, text=True,
        )
        assert result.returncode == 0
        assert abs(json.loads(result.stdout)["value"] - math.log(2)) < 1e-9
