import csv
import io
import json

import numpy as np
import pytest

from src.python.app.main import cli
from src.python.app.models import RunConfig


def _invoke(runner, *args):
    return runner.invoke(cli, ["--env", "testing", *args])


def _csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestAlgebra:

    def test_standard_d3_passes(self, runner):
        result = _invoke(runner, "algebra", "--model", "standard", "--dim", "3")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["pass"] is True
        assert payload["max_residual"] <= 1e-13

    def test_standard_d5_is_rejected(self, runner):
        result = _invoke(runner, "algebra", "--model", "standard", "--dim", "5")
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_ks_d4_includes_lattice_relations(self, runner):
        result = _invoke(runner, "algebra", "--model", "ks", "--dim", "4")
        assert result.exit_code == 0
        names = [r["name"] for r in json.loads(result.stdout)["relations"]]
        assert "lattice:Y^2-1" in names
        assert "lattice:X_1X_2+X_2X_1" in names

    def test_csv_is_rejected(self, runner):
        result = _invoke(runner, "algebra", "--dim", "2", "--format", "csv")
        assert result.exit_code == 2

    def test_ks_with_field_file(self, runner, tmp_path, rng):
        from src.python.service.dirac.field_io import save_field
        from src.python.service.dirac.lattice import LatticeField, LatticeGrid
        path = tmp_path / "u.csv"
        save_field(LatticeField.random(LatticeGrid(2, 6, 1.0), 1, rng), path, "csv")
        result = _invoke(runner, "algebra", "--model", "ks", "--dim", "2", "--field", str(path))
        assert result.exit_code == 0

    def test_field_with_wrong_dimension(self, runner, tmp_path, rng):
        from src.python.service.dirac.field_io import save_field
        from src.python.service.dirac.lattice import LatticeField, LatticeGrid
        path = tmp_path / "u.json"
        save_field(LatticeField.random(LatticeGrid(1, 4, 1.0), 1, rng), path)
        result = _invoke(runner, "algebra", "--model", "ks", "--dim", "2", "--field", str(path))
        assert result.exit_code == 2


class TestDispersion:

    def test_naive_d1_csv(self, runner):
        result = _invoke(runner, "dispersion", "--model", "naive", "--dim", "1", "--h", "1", "--m", "0",
                         "--grid", "8", "--format", "csv")
        assert result.exit_code == 0
        rows = _csv_rows(result.stdout)
        assert len(rows) == 9
        assert rows[0] == ["xi_1", "E_1", "E_2"]
        for row in rows[1:]:
            xi, lower, upper = (float(v) for v in row)
            assert upper == pytest.approx(abs(np.sin(2 * np.pi * xi)), abs=1e-12)
            assert lower == pytest.approx(-upper, abs=1e-15)

    def test_ks_d1_uses_half_period(self, runner):
        result = _invoke(runner, "dispersion", "--model", "ks", "--dim", "1", "--m", "0", "--grid", "8",
                         "--format", "csv")
        assert result.exit_code == 0
        rows = _csv_rows(result.stdout)[1:]
        for k, row in enumerate(rows):
            xi = float(row[0])
            assert xi == pytest.approx(k / 16)
            assert float(row[2]) == pytest.approx(np.sqrt((1 - np.cos(4 * np.pi * xi)) / 2), abs=1e-12)

    def test_continuum_d2_json(self, runner):
        result = _invoke(runner, "dispersion", "--model", "continuum", "--dim", "2", "--grid", "4")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert len(payload["xi"]) == 16
        assert payload["energies"][0] == [-1.0, 1.0]

    def test_wilson_records_rho(self, runner):
        result = _invoke(runner, "dispersion", "--model", "wilson", "--h", "0.5", "--rho-rule", "const:0.3",
                         "--grid", "4")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["rho"] == pytest.approx(0.3)

    def test_rho_rule_needs_wilson(self, runner):
        result = _invoke(runner, "dispersion", "--model", "naive", "--rho-rule", "h")
        assert result.exit_code == 2

    def test_negative_mass_is_rejected(self, runner):
        result = _invoke(runner, "dispersion", "--model", "naive", "--m", "-1")
        assert result.exit_code == 2


class TestDoubling:

    @pytest.mark.parametrize("model,dim,count", [("naive", 3, 8), ("ks", 3, 1), ("wilson", 2, 1), ("naive", 1, 2)])
    def test_light_minima_counts(self, runner, model, dim, count):
        result = _invoke(runner, "doubling", "--model", model, "--dim", str(dim))
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["count"] == count
        assert [0.0] * dim in payload["locations"]

    def test_small_grid_is_rejected(self, runner):
        result = _invoke(runner, "doubling", "--model", "naive", "--grid", "4")
        assert result.exit_code == 2


class TestConverge:

    def test_ks_d1_rate(self, runner):
        result = _invoke(runner, "converge", "--model", "ks", "--dim", "1")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["slope"] == pytest.approx(1.0, abs=0.15)
        assert payload["verdict"] == "converging"
        assert len(payload["samples"]) == 7

    def test_wilson_d2_rate(self, runner):
        result = _invoke(runner, "converge", "--model", "wilson", "--rho-rule", "h", "--dim", "2")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["slope"] == pytest.approx(1.0, abs=0.15)
        assert payload["rho_rule"] == "h"

    def test_naive_is_reported_not_failed(self, runner):
        result = _invoke(runner, "converge", "--model", "naive", "--dim", "1", "--h-list", "0.125,0.0625,0.03125",
                         "--grid", "1024")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["verdict"] == "non-convergent"

    def test_csv_columns(self, runner):
        result = _invoke(runner, "converge", "--model", "wilson", "--h-list", "0.125,0.0625,0.03125",
                         "--grid", "512", "--format", "csv")
        assert result.exit_code == 0
        rows = _csv_rows(result.stdout)
        assert rows[0] == ["h", "rho", "D", "model", "z_re", "z_im", "dim", "m"]
        assert rows[1][0] == "0.125" and rows[1][1] == "0.125" and rows[1][3] == "wilson"

    def test_single_h_cannot_be_fit(self, runner):
        result = _invoke(runner, "converge", "--model", "ks", "--h", "0.125", "--grid", "256")
        assert result.exit_code == 1
        assert json.loads(result.stdout)["slope"] is None

    def test_real_z_is_rejected(self, runner):
        result = _invoke(runner, "converge", "--model", "ks", "--z", "1,0")
        assert result.exit_code == 2

    def test_increasing_h_list_is_rejected(self, runner):
        result = _invoke(runner, "converge", "--model", "ks", "--h-list", "0.1,0.2,0.3")
        assert result.exit_code == 2

    def test_h_list_takes_precedence(self, runner):
        result = _invoke(runner, "converge", "--model", "ks", "--h", "0.5", "--h-list", "0.125,0.0625,0.03125",
                         "--grid", "256")
        assert result.exit_code == 0
        assert [s["h"] for s in json.loads(result.stdout)["samples"]] == [0.125, 0.0625, 0.03125]


@pytest.mark.parametrize("kwargs,expected", [
    ({"h_list": "0.5,0.25"}, [0.5, 0.25]),
    ({"h": 0.1, "h_list": "0.5,0.25"}, [0.5, 0.25]),
    ({"h": 0.1}, [0.1]),
    ({}, None),
])
def test_run_config_spacings(kwargs, expected):
    assert RunConfig(command="converge", model="ks", **kwargs).spacings == expected


class TestVerifyKs:

    @pytest.mark.parametrize("dim,n", [(2, 4), (3, 2), (1, 6)])
    def test_passes(self, runner, dim, n):
        result = _invoke(runner, "verify-ks", "--dim", str(dim), "--n", str(n))
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["pass"] is True
        assert len(payload["relations"]) == 5

    def test_odd_side_is_rejected(self, runner):
        result = _invoke(runner, "verify-ks", "--dim", "1", "--n", "3")
        assert result.exit_code == 2


class TestDiag:

    @pytest.mark.parametrize("dim", [2, 3])
    def test_passes(self, runner, dim):
        result = _invoke(runner, "diag", "--dim", str(dim))
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["pass"] is True
        assert len(payload["samples"]) == 200

    def test_d1_identification(self, runner):
        result = _invoke(runner, "diag", "--dim", "1")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["identification"].startswith("d=1")
        assert "sigma_1" in result.stderr

    def test_d4_is_rejected(self, runner):
        result = _invoke(runner, "diag", "--dim", "4")
        assert result.exit_code == 2


class TestOutput:

    def test_out_files_are_byte_identical(self, runner, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for path in (first, second):
            result = _invoke(runner, "algebra", "--model", "ks", "--dim", "2", "--out", str(path))
            assert result.exit_code == 0
            assert "algebra ks d=2" in result.stdout
        assert first.read_bytes() == second.read_bytes()

    def test_missing_directory_is_io_error(self, runner, tmp_path):
        result = _invoke(runner, "dispersion", "--model", "naive", "--out", str(tmp_path / "missing" / "r.json"))
        assert result.exit_code == 3
