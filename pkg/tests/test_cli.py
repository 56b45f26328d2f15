import csv
import io
import json
import math

import pytest

from randmap.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestEval:
    def test_rho_at_two(self, capsys):
        code, rec = run_json(capsys, "eval", "--fn", "rho", "--x", "2")
        assert code == 0
        assert rec["values"]["value"] == pytest.approx(0.3068528194400547, rel=1e-10)

    def test_g_requires_theta(self, capsys):
        code, rec = run_json(capsys, "eval", "--fn", "g", "--x", "1.0")
        assert code == 1
        assert "reason" in rec["errors"]

    def test_sigma_tilde(self, capsys):
        code, rec = run_json(capsys, "eval", "--fn", "sigma-tilde", "--x", "2")
        assert code == 0
        assert rec["values"]["value"] == pytest.approx(0.11862641298045697, rel=1e-9)


class TestCdf:
    def test_perm_cycle(self, capsys):
        code, rec = run_json(capsys, "cdf", "--kind", "perm-cycle", "--a", "0.5")
        assert code == 0
        a = rec["values"]["cdf"]
        code, rec = run_json(capsys, "cdf", "--kind", "perm-cycle", "--a", str(1 / 3))
        b = rec["values"]["cdf"]
        assert a - b == pytest.approx(0.258244431148, abs=1e-9)

    def test_mapping_cycle_regimes(self, capsys):
        code, rec = run_json(
            capsys, "cdf", "--kind", "mapping-cycle", "--b", "0.6842", "--regime", "rayleigh"
        )
        assert code == 0
        assert rec["values"]["cdf"] == pytest.approx(0.5, abs=1e-4)
        code, rec = run_json(
            capsys, "cdf", "--kind", "mapping-cycle", "--b", "1.0", "--regime", "connected"
        )
        assert rec["values"]["cdf"] == pytest.approx(math.erf(1 / math.sqrt(2)), rel=1e-12)

    def test_pavlov_needs_c(self, capsys):
        code, rec = run_json(
            capsys, "cdf", "--kind", "mapping-cycle", "--b", "1.0", "--regime", "pavlov"
        )
        assert code == 1


class TestConstants:
    def test_rayleigh_table(self, capsys):
        code, rec = run_json(capsys, "constants", "--regime", "rayleigh")
        assert code == 0
        vals = rec["values"]
        assert vals["mean_1"] == pytest.approx(0.78248160099165661501, abs=1e-9)
        assert vals["mean_4"] == pytest.approx(0.05056118481134243184, abs=1e-9)
        assert vals["corr_n_1"] == pytest.approx(0.83298010, abs=1e-6)
        assert vals["mode"] == pytest.approx(0.4809, abs=1e-3)
        assert vals["median"] == pytest.approx(0.6842, abs=5e-4)


class TestInvlaplace:
    def test_erfc_gauss(self, capsys):
        code, rec = run_json(
            capsys, "invlaplace", "--transform", "erfc-gauss", "--xi", "1.0"
        )
        assert code == 0
        assert rec["values"]["value"] == pytest.approx(math.exp(-math.pi / 4), abs=1e-9)

    def test_method_mismatch_is_computation_error(self, capsys):
        code, rec = run_json(
            capsys,
            "invlaplace",
            "--transform",
            "erfc-gauss",
            "--xi",
            "1.0",
            "--method",
            "talbot",
        )
        assert code == 1
        assert "MethodMismatchError" in rec["errors"]["reason"]


class TestSimulateAndEnumerate:
    def test_simulate_deterministic(self, capsys):
        args = ("simulate", "--n", "64", "--trials", "200", "--seed", "5", "--quiet")
        code1, out1 = run_cli(capsys, *args)
        code2, out2 = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_wall_time_only_varies(self, capsys):
        args = ("simulate", "--n", "32", "--trials", "100", "--seed", "9")
        _, rec1 = run_json(capsys, *args)
        _, rec2 = run_json(capsys, *args)
        rec1.pop("wall_time_s")
        rec2.pop("wall_time_s")
        assert rec1 == rec2

    def test_enumerate_with_egf_check(self, capsys):
        code, rec = run_json(capsys, "enumerate", "--n", "2", "--check-egf")
        assert code == 0
        assert rec["values"]["total"] == 4.0
        assert rec["values"]["connected_count"] == 3.0
        assert rec["values"]["egf_match"] == 1.0

    def test_enumerate_size_error(self, capsys):
        code, rec = run_json(capsys, "enumerate", "--n", "9")
        assert code == 1


class TestDivisibility:
    def test_report(self, capsys):
        code, rec = run_json(
            capsys,
            "divisibility",
            "--eta-min",
            "0.05",
            "--eta-max",
            "10",
            "--steps",
            "32",
        )
        assert code == 0
        vals = rec["values"]
        assert vals["bounds_strict"] == 1.0
        assert vals["max_approx_rel_err"] < 0.005
        assert vals["m2_root_ratio"] >= 5.0


class TestFormats:
    def test_csv_and_json_encode_same_numbers(self, capsys):
        code, js = run_json(capsys, "eval", "--fn", "rho", "--x", "2.5")
        code2, out = run_cli(capsys, "eval", "--fn", "rho", "--x", "2.5", "--format", "csv")
        assert code == code2 == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["name", "value"]
        table = {r[0]: r[1] for r in rows[1:]}
        assert float(table["value"]) == js["values"]["value"]

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cdf", "--kind", "nope"])
        assert exc.value.code == 2
