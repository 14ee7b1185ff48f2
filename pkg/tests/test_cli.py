import csv
import io
import json
import math

import numpy as np
import pytest

from orthosearch import cli
from orthosearch.cli import FailureDiagnosis, Reason, Scheme, Table, main, render_csv, render_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.splitlines()
    params = {}
    while lines and lines[0].startswith("#"):
        key, _, val = lines.pop(0)[2:].partition("=")
        params[key] = val
    return params, list(csv.DictReader(io.StringIO("\n".join(lines))))


class TestRendering:
    def test_csv_round_trip(self):
        t = Table(["a", "b", "c"], [[1, 0.1, True], [2, math.pi, False]], {"k": 3})
        params, rows = parse_csv(render_csv(t))
        assert params == {"schema": "1", "k": "3"}
        assert float(rows[1]["b"]) == math.pi
        assert [r["c"] for r in rows] == ["true", "false"]

    def test_json_handles_numpy_and_enums(self):
        t = Table(["s", "x", "n"], [[Scheme.FG, np.float64(0.5), np.int64(3)]], {"v": [np.float64(1.0)]})
        doc = json.loads(render_json(t))
        assert doc == {"schema": 1, "params": {"v": [1.0]}, "rows": [{"s": "FG", "x": 0.5, "n": 3}]}

    def test_diagnosis_consistency(self):
        with pytest.raises(ValueError):
            FailureDiagnosis(Scheme.FG, True, Reason.NONE)
        with pytest.raises(ValueError):
            FailureDiagnosis(Scheme.FG, False, Reason.VANISHING_GAP)


class TestCommands:
    def test_fig2(self, capsys):
        code, out, _ = run_cli(capsys, "fig2", "--steps", "4")
        assert code == 0
        params, rows = parse_csv(out)
        assert params["steps"] == "4"
        assert len(rows) == 5
        assert float(rows[0]["pA_plus"]) == pytest.approx(0.5, abs=1e-12)
        assert float(rows[2]["pA_plus"]) == pytest.approx(0.7236067977499788, abs=1e-12)
        for r in rows:
            assert float(r["pA_plus"]) + float(r["pA_minus"]) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("case, gmin", [("orthogonal", 0.0), ("overlapping", 1 / math.sqrt(2))])
    def test_fig3(self, capsys, case, gmin):
        code, out, _ = run_cli(capsys, "fig3", "--case", case, "--grid", "11")
        assert code == 0
        _, rows = parse_csv(out)
        gaps = [float(r["gap"]) for r in rows]
        assert min(gaps) == pytest.approx(gmin, abs=1e-12)
        assert float(rows[5]["xi"]) == pytest.approx(0.5)

    def test_scaling_defaults_to_json(self, capsys):
        code, out, _ = run_cli(capsys, "scaling", "--k-max", "10")
        assert code == 0
        doc = json.loads(out)
        assert doc["params"]["slope"] == pytest.approx(0.5, abs=1e-9)
        assert doc["rows"][0] == {"N": 2, "t_fg": pytest.approx(math.pi / 2 * math.sqrt(2)), "t_fenner": pytest.approx(math.pi / 4)}

    def test_scaling_limit(self, capsys):
        code, _, err = run_cli(capsys, "scaling", "--k-max", "31")
        assert code == 2
        assert "k-max" in err

    @pytest.mark.parametrize(
        "scenario, expected",
        [
            ("optimal_stationary", (math.pi, True, True, True)),
            ("suboptimal_nonstationary", (3.3295836107826755, False, False, False)),
        ],
    )
    def test_table1(self, capsys, scenario, expected):
        code, out, _ = run_cli(capsys, "table1", "--scenario", scenario)
        assert code == 0
        row = json.loads(out)["rows"][0]
        assert row["path_length"] == pytest.approx(expected[0], abs=1e-6)
        assert (row["dispersion_constant"], row["amplitude_half"], row["bloch_dots_zero"]) == expected[1:]

    def test_table2(self, capsys):
        code, out, _ = run_cli(capsys, "table2")
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [r["scheme"] for r in rows] == ["FG", "Fenner", "RolandCerf"]
        assert all(r["fails_on_orthogonal"] for r in rows)
        assert [r["reason"] for r in rows] == ["InfiniteSearchTime", "ExcludedByConstruction", "VanishingGap"]

    def test_coupling_fix(self, capsys):
        code, out, _ = run_cli(capsys, "coupling-fix", "--gamma", "0.05", "0.25", "--grid", "101")
        assert code == 0
        _, rows = parse_csv(out)
        for r in rows:
            assert float(r["g_min"]) == pytest.approx(2 * float(r["gamma"]), abs=1e-10)

    def test_negative_gamma_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["coupling-fix", "--gamma", "-0.1"])
        assert exc.value.code == 2

    def test_constraint_scan(self, capsys):
        code, out, _ = run_cli(capsys, "constraint-scan", "--grid", "101")
        assert code == 0
        params, rows = parse_csv(out)
        assert params["feasible_epsilons"] == "[0.0]"
        assert sum(r["feasible"] == "true" for r in rows) == 1

    def test_grover_check(self, capsys):
        code, out, _ = run_cli(capsys, "grover-check", "--n", "4", "64", "--seed", "7")
        assert code == 0
        params, rows = parse_csv(out)
        assert params["seed"] == "7"
        assert [int(r["N"]) for r in rows] == [4, 64]
        assert all(float(r["distance"]) < 1e-12 for r in rows)


class TestExitCodes:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["nope"])
        assert exc.value.code == 2

    def test_numerical_failure(self, capsys, monkeypatch):
        def broken(*_):
            raise cli.NumericalAssertionError("forced")

        monkeypatch.setattr(cli, "cmd_table2", broken)
        code, _, err = run_cli(capsys, "table2")
        assert code == 3
        assert "forced" in err

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "table2", "--out", str(tmp_path / "missing" / "x.json"))
        assert code == 4
        assert "cannot write" in err

    def test_writes_file(self, capsys, tmp_path):
        path = tmp_path / "grover.json"
        code, out, _ = run_cli(capsys, "grover-check", "--n", "2", "--format", "json", "--out", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["rows"][0]["N"] == 2
