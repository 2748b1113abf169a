import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from pstrim.cli import main


@pytest.fixture
def demo_csv(tmp_path):
    rng = np.random.default_rng(17)
    n = 240
    x1 = rng.standard_normal(n)
    x2 = rng.uniform(-1, 1, n)
    e = 1 / (1 + np.exp(-(0.3 + 0.8 * x1 - 0.4 * x2)))
    a = (rng.random(n) < e).astype(int)
    y = 1.2 * a + x1 + 0.5 * x2 + rng.standard_normal(n)
    path = tmp_path / "demo.csv"
    lines = ["t,resp,x1,x2"]
    lines += [f"{a[i]},{float(y[i])!r},{float(x1[i])!r},{float(x2[i])!r}" for i in range(n)]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def load_schema(name):
    with resources.files("pstrim.schemas").joinpath(name).open() as fh:
        return json.load(fh)


class TestEstimate:
    BASE = ["estimate", "--treatment", "t", "--outcome", "resp"]

    def test_report_matches_schema(self, capsys, demo_csv):
        code, out, _ = run_cli(capsys, *self.BASE, "--data", demo_csv,
                               "--weight", "smooth", "--epsilon", "1e-4",
                               "--augmented", "--bootstrap", "50", "--seed", "3")
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, load_schema("estimate_report.schema.json"))
        assert report["bootstrap_b"] == 50
        assert report["ci"][0] <= report["estimate"] <= report["ci"][1]
        assert report["n_effective"] <= report["n_total"]

    def test_no_bootstrap_omits_inference_fields(self, capsys, demo_csv):
        code, out, _ = run_cli(capsys, *self.BASE, "--data", demo_csv)
        assert code == 0
        report = json.loads(out)
        jsonschema.validate(report, load_schema("estimate_report.schema.json"))
        assert "se" not in report and "ci" not in report

    def test_byte_identical_reruns(self, capsys, demo_csv):
        argv = self.BASE + ["--data", demo_csv, "--augmented",
                            "--bootstrap", "40", "--seed", "11"]
        _, out1, _ = run_cli(capsys, *argv)
        _, out2, _ = run_cli(capsys, *argv)
        assert out1.encode() == out2.encode()

    def test_bad_cutoff_order_exits_2(self, capsys, demo_csv):
        code, _, err = run_cli(capsys, *self.BASE, "--data", demo_csv,
                               "--alpha1", "0.9", "--alpha2", "0.1")
        assert code == 2
        payload = json.loads(err)
        assert "alpha1 < alpha2" in payload["error"]["message"]

    def test_missing_column_exits_2(self, capsys, demo_csv):
        code, _, err = run_cli(capsys, "estimate", "--data", demo_csv,
                               "--treatment", "nope", "--outcome", "resp")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "SchemaError"

    def test_separation_exits_3(self, capsys, tmp_path):
        path = tmp_path / "sep.csv"
        rows = ["a,y,x1"] + [f"{int(i >= 10)},{i / 7:.3f},{i - 10}.5" for i in range(20)]
        path.write_text("\n".join(rows) + "\n")
        code, _, err = run_cli(capsys, "estimate", "--data", str(path),
                               "--treatment", "a", "--outcome", "y")
        assert code == 3
        assert json.loads(err)["error"]["type"] == "SeparationError"

    def test_pretty_output(self, capsys, demo_csv):
        code, out, _ = run_cli(capsys, *self.BASE, "--data", demo_csv, "--pretty")
        assert code == 0
        assert out.startswith("estimate")


class TestSimulate:
    def test_single_replication_var_is_zero(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--design", "P1", "--outcome", "O1",
                               "--n", "100", "--reps", "1", "--bootstrap", "0",
                               "--epsilon-grid", "1e-4", "--seed", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "estimator,epsilon,mean,var,ve,true_tau_O"
        for line in lines[1:]:
            assert float(line.split(",")[3]) == 0.0

    def test_bad_design_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--design", "P9", "--outcome", "O1")
        assert code == 2
        assert "P9" in json.loads(err)["error"]["message"]

    def test_out_file_and_determinism(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["simulate", "--design", "P1", "--outcome", "O2", "--n", "80",
                "--reps", "2", "--bootstrap", "3", "--epsilon-grid", "",
                "--seed", "9"]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestAttAlpha:
    def test_balanced_intercept_only_gives_quarter(self, capsys, tmp_path):
        path = tmp_path / "flat.csv"
        rows = ["a,y"] + [f"{i % 2},{i / 3:.4f}" for i in range(40)]
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = run_cli(capsys, "att-alpha", "--data", str(path), "--treatment", "a")
        assert code == 0
        payload = json.loads(out)
        jsonschema.validate(payload, load_schema("alpha_solution.schema.json"))
        assert abs(payload["alpha"] - 0.25) <= 1e-9
        assert payload["retained_fraction"] == 1.0

    def test_low_scores_retain_everyone(self, capsys, tmp_path):
        # 4 treated of 40 with no covariates: constant fitted score 0.1
        path = tmp_path / "low.csv"
        rows = ["a,y"] + [f"{int(i < 4)},{i / 9:.4f}" for i in range(40)]
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = run_cli(capsys, "att-alpha", "--data", str(path), "--treatment", "a")
        assert code == 0
        payload = json.loads(out)
        assert payload["retained_fraction"] == 1.0
        assert abs(payload["alpha"] - 0.45) <= 1e-9

    def test_missing_treatment_column_exits_2(self, capsys, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,y\n1,2.0\n0,1.0\n")
        code, _, err = run_cli(capsys, "att-alpha", "--data", str(path), "--treatment", "zzz")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "SchemaError"


class TestWeightCurves:
    def test_curve_table(self, capsys):
        code, out, _ = run_cli(capsys, "weight-curves", "--points", "99",
                               "--epsilon-grid", "1e-3")
        assert code == 0
        lines = out.strip().splitlines()
        header = lines[0].split(",")
        assert header[0] == "e" and "indicator" in header and "overlap" in header
        assert len(lines) == 100
        mid = lines[50].split(",")
        assert float(mid[0]) == 0.5
        assert float(mid[header.index("overlap")]) == 0.25
