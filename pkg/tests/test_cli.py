import csv
import io
import json
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from kgyukawa import cli
from kgyukawa.cli import Command, RunConfig, main, run_fig1, run_scan, run_table
from kgyukawa.errors import DomainError
from kgyukawa.model import PhysicalParams, QuantumNumbers
from kgyukawa.output import format_float, schema, to_csv
from kgyukawa.tables import TABLE_II
from kgyukawa.verify import CheckResult, VerifyReport


@pytest.fixture
def runner():
    return CliRunner()


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestFormatting:
    def test_float_format(self):
        assert format_float(0.123456789123) == "0.123456789"
        assert format_float(1.5e-4) == "1.50000000e-04"
        assert format_float(0.0) == "0"
        assert format_float(12345.6789012) == "12345.6789"

    def test_csv_shape(self):
        text = to_csv(["a", "b"], [{"a": 1.0, "b": None}, {"a": True, "b": "x,y"}])
        assert text == "a,b\n1,\ntrue,x;y\n"
        assert "\r" not in text


class TestCommands:
    def test_bound_closed(self, runner):
        res = runner.invoke(main, ["bound", "--eta", "0.1", "--alpha", "0.01"])
        assert res.exit_code == 0, res.output
        rows = rows_of(res.output)
        plus = next(r for r in rows if r["branch"] == "plus")
        assert abs(float(plus["energy"]) - 0.999181) < 1e-6
        assert plus["normalizable"] == "true"

    def test_bound_all_methods(self, runner):
        res = runner.invoke(main, ["bound", "--method", "all", "--branch", "plus", "--coupling", "published"])
        assert res.exit_code == 0, res.output
        energies = {r["method"]: float(r["energy"]) for r in rows_of(res.output)}
        assert set(energies) >= {"closed", "root", "oracle"}
        assert max(energies.values()) - min(energies.values()) < 1e-9

    def test_json_matches_schema(self, runner):
        res = runner.invoke(main, ["bound", "--format", "json", "--n", "1", "--l", "1", "--m1", "0.1"])
        assert res.exit_code == 0, res.output
        payload = json.loads(res.output)
        jsonschema.validate(payload, schema())
        assert payload["meta"]["parameters"]["m1"] == 0.1

    def test_table_two(self, runner):
        res = runner.invoke(main, ["table", "II"])
        assert res.exit_code == 0
        rows = rows_of(res.output)
        assert len(rows) == 60
        assert max(float(r["abs_diff"]) for r in rows) < 1e-5
        last = next(r for r in rows if r["n"] == "10" and r["l"] == "10" and r["m1"] == "0.1" and r["column"] == "E+")
        assert abs(float(last["computed"]) - 0.900957) < 1e-5

    def test_table_one_json(self, runner):
        res = runner.invoke(main, ["table", "I", "--format", "json"])
        payload = json.loads(res.output)
        jsonschema.validate(payload, schema())
        row = payload["rows"][-1]
        assert (row["eta"], row["alpha"]) == (0.25, 0.3)
        assert abs(row["computed"] - 0.985799) < 1e-5

    def test_coulomb(self, runner):
        res = runner.invoke(main, ["coulomb", "--alpha", "0.05", "--m1", "0.0"])
        assert res.exit_code == 0, res.output
        assert abs(float(rows_of(res.output)[0]["energy"]) - 0.9801980198) < 1e-9

    def test_scatter_range(self, runner):
        res = runner.invoke(main, ["scatter", "--e-min", "1.01", "--e-max", "2.0", "--e-points", "100"])
        assert res.exit_code == 0, res.output
        rows = rows_of(res.output)
        energies = [float(r["energy"]) for r in rows]
        assert len(rows) == 100 and energies == sorted(energies)
        assert all(r["error"] == "" for r in rows)

    def test_wavefunction(self, runner, tmp_path):
        out = tmp_path / "phi.csv"
        res = runner.invoke(main, ["wavefunction", "--points", "400", "--output", str(out)])
        assert res.exit_code == 0, res.output
        rows = rows_of(out.read_text())
        assert len(rows) == 400
        assert abs(float(rows[-1]["phi"])) < 1e-6

    def test_fig1(self, runner):
        res = runner.invoke(main, ["fig1", "--points", "50"])
        rows = rows_of(res.output)
        assert {r["alpha"] for r in rows} == {"0.25", "0.3"}
        first = rows[0]
        assert abs(float(first["screened"]) / float(first["inv_r"]) - 1) < 1e-3
        assert abs(float(first["product_form"]) / float(first["inv_r"]) - 1) > 0.5

    def test_help_documents_exit_codes(self, runner):
        text = " ".join(runner.invoke(main, ["--help"]).output.split())
        for code in ("2 argument", "3 domain", "4 convergence", "5 verification"):
            assert code in text


class TestExitCodes:
    def test_argument_error(self, runner):
        assert runner.invoke(main, ["bound", "--eta", "abc"]).exit_code == 2
        assert runner.invoke(main, ["scatter"]).exit_code == 2
        assert runner.invoke(main, ["scatter", "--e-min", "1.1"]).exit_code == 2

    def test_domain_error(self, runner):
        res = runner.invoke(main, ["scatter", "--energy", "0.9"])
        assert res.exit_code == 3
        assert runner.invoke(main, ["bound", "--eta", "0.8"]).exit_code == 3
        assert runner.invoke(main, ["bound", "--alpha", "-1"]).exit_code == 3

    def test_convergence_error(self, runner):
        # the oracle finds no state with this many nodes
        res = runner.invoke(main, ["bound", "--method", "oracle", "--n", "10", "--coupling", "published"])
        assert res.exit_code == 4, res.output

    def test_verify_failure(self, runner, monkeypatch):
        bad = VerifyReport(0, 0, 1.0, 0, 0, 0, passed=False, checks=(CheckResult("oracle", 1.0, 1e-4, False),))
        monkeypatch.setattr(cli, "run_verify", lambda eta_shift=0.0: bad)
        res = runner.invoke(main, ["verify"])
        assert res.exit_code == 5
        assert json.loads(res.output)["pass"] is False


class TestConfig:
    def test_precedence(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"eta": 0.01, "alpha": 0.1, "n": 1}))
        via_config = rows_of(runner.invoke(main, ["bound", "--config", str(cfg), "--branch", "plus"]).output)[0]
        assert (via_config["eta"], via_config["alpha"], via_config["n"]) == ("0.01", "0.1", "1")
        flagged = rows_of(runner.invoke(main, ["bound", "--config", str(cfg), "--eta", "0.1", "--branch", "plus"]).output)[0]
        assert (flagged["eta"], flagged["alpha"]) == ("0.1", "0.1")
        default = rows_of(runner.invoke(main, ["bound", "--branch", "plus"]).output)[0]
        assert (default["m0"], default["eta"], default["alpha"]) == ("1", "0.1", "0.01")

    def test_bad_config(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        assert runner.invoke(main, ["bound", "--config", str(cfg)]).exit_code == 2

    def test_scan_records_errors_and_continues(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"scan": {"energy": [0.5, 1.2]}}))
        res = runner.invoke(main, ["scatter", "--config", str(cfg)])
        assert res.exit_code == 0, res.output
        first, second = rows_of(res.output)
        assert "ClosedChannel" in first["error"]
        assert second["error"] == "" and second["phase_total"] != ""


class TestScan:
    def test_single_point_equals_invocation(self, runner):
        cfg = RunConfig(Command.BOUND, params=PhysicalParams(eta=0.1, alpha=0.01), scan={"n": [1]})
        cols, rows = run_scan(cfg)
        direct = runner.invoke(main, ["bound", "--n", "1"]).output
        assert to_csv(cols, rows) == direct

    def test_table_rows_via_points(self):
        points = tuple({"n": r.n, "l": r.l, "eta": r.eta, "alpha": r.alpha, "m1": m1}
                       for r in TABLE_II for m1 in (0.0, 0.1))
        _, rows = run_scan(RunConfig(Command.BOUND, points=points, branch="plus"))
        _, table = run_table("II")
        golden = {(t["n"], t["l"], t["eta"], t["alpha"], t["m1"]): t["computed"] for t in table if t["column"] == "E+"}
        for row in rows:
            assert row["energy"] == golden[(row["n"], row["l"], row["eta"], row["alpha"], row["m1"])]

    def test_cartesian_order(self):
        cfg = RunConfig(Command.BOUND, scan={"eta": [0.1, 0.2], "n": [0, 1, 2]}, branch="plus")
        pts = cfg.expand()
        assert [(p["eta"], p["n"]) for p in pts] == [(e, n) for e in (0.1, 0.2) for n in (0, 1, 2)]

    def test_parallel_matches_serial(self):
        cfg = RunConfig(Command.SCATTER, scan={"l": [0, 1, 2], "energy": [1.05, 1.5, 1.9]})
        assert run_scan(cfg, workers=1) == run_scan(cfg, workers=3)

    def test_empty_range_rejected(self):
        with pytest.raises(DomainError):
            RunConfig(Command.BOUND, scan={"eta": []})
        with pytest.raises(DomainError):
            RunConfig(Command.BOUND, scan={"eta": [float("inf")]})

    def test_deterministic_bytes(self, runner):
        args = ["scatter", "--e-min", "1.1", "--e-max", "1.9", "--e-points", "9", "--l", "2", "--format", "json"]
        assert runner.invoke(main, args).output == runner.invoke(main, args).output


def test_fig1_columns():
    cols, rows = run_fig1((0.25,), 5.0, 10)
    assert cols[:3] == ["alpha", "r", "inv_r"]
    assert len(rows) == 10
    with pytest.raises(DomainError):
        run_fig1((0.25,), 5.0, 1)


def test_verify_schema_file_is_valid():
    text = resources.files("kgyukawa").joinpath("data/verify.schema.json").read_text()
    jsonschema.Draft202012Validator.check_schema(json.loads(text))
    jsonschema.Draft202012Validator.check_schema(schema())
