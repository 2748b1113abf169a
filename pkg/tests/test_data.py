import numpy as np
import pytest

from pstrim import (Dataset, DegenerateArmError, ParseError, SchemaError,
                    load_csv, save_csv)


def write(tmp_path, text, name="d.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:
    def test_two_row_parse_identity(self, tmp_path):
        ds = load_csv(write(tmp_path, "a,y,x1\n1,2.0,0.3\n0,1.0,-0.3\n"), "a", "y")
        assert ds.n == 2 and ds.p == 2
        assert np.array_equal(ds.a, [1.0, 0.0])
        assert np.array_equal(ds.y, [2.0, 1.0])
        assert np.array_equal(ds.x, [[1.0, 0.3], [1.0, -0.3]])
        assert ds.covariate_names == ("intercept", "x1")

    def test_row_order_preserved(self, tmp_path):
        rows = "\n".join(f"{i % 2},{i}.5,{i}" for i in range(1, 9))
        ds = load_csv(write(tmp_path, "a,y,x1\n" + rows + "\n"), "a", "y")
        assert np.array_equal(ds.x[:, 1], np.arange(1, 9, dtype=float))

    def test_all_treated_is_degenerate(self, tmp_path):
        with pytest.raises(DegenerateArmError):
            load_csv(write(tmp_path, "a,y,x1\n1,2.0,0.3\n1,1.0,-0.3\n"), "a", "y")

    def test_a_equals_two_names_row(self, tmp_path):
        with pytest.raises(ParseError, match="row 2"):
            load_csv(write(tmp_path, "a,y,x1\n1,2.0,0.3\n2,1.0,-0.3\n0,0.0,0.1\n"), "a", "y")

    def test_missing_column_is_schema_error(self, tmp_path):
        with pytest.raises(SchemaError, match="'treat'"):
            load_csv(write(tmp_path, "a,y,x1\n1,2.0,0.3\n0,1.0,0.1\n"), "treat", "y")

    def test_non_numeric_cell_names_row_and_column(self, tmp_path):
        with pytest.raises(ParseError, match="row 1.*'x1'"):
            load_csv(write(tmp_path, "a,y,x1\n1,2.0,oops\n0,1.0,0.1\n"), "a", "y")

    def test_missing_cell_is_parse_error(self, tmp_path):
        with pytest.raises(ParseError, match="row 2"):
            load_csv(write(tmp_path, "a,y,x1\n1,2.0,0.3\n0,,0.1\n"), "a", "y")

    def test_no_covariate_columns_leaves_intercept(self, tmp_path):
        ds = load_csv(write(tmp_path, "a,y\n1,2.0\n0,1.0\n"), "a", "y")
        assert ds.p == 1
        assert np.array_equal(ds.x, [[1.0], [1.0]])

    def test_covariate_count(self, tmp_path):
        text = "a,y,u,v,w\n" + "1,1.0,1,2,3\n0,0.0,4,5,6\n"
        ds = load_csv(write(tmp_path, text), "a", "y")
        # (numeric columns - 2) + 1 intercept
        assert ds.p == (5 - 2) + 1

    def test_float_treatment_tokens_accepted(self, tmp_path):
        ds = load_csv(write(tmp_path, "a,y,x1\n1.0,2.0,0.3\n0.0,1.0,0.1\n"), "a", "y")
        assert np.array_equal(ds.a, [1.0, 0.0])


class TestRoundTrip:
    def test_csv_round_trip_is_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        n = 25
        x = np.column_stack([np.ones(n), rng.standard_normal((n, 3)) * 1e3,
                             rng.random(n) * 1e-7])
        a = (rng.random(n) < 0.5).astype(float)
        a[:2] = [0.0, 1.0]
        y = rng.standard_normal(n) * 17.3
        ds = Dataset(a, y, x)
        out = tmp_path / "rt.csv"
        save_csv(ds, out)
        back = load_csv(out, "a", "y")
        # repr round-trips doubles exactly, which covers 15 significant digits
        assert np.array_equal(back.y, ds.y)
        assert np.array_equal(back.x, ds.x)
        assert np.array_equal(back.a, ds.a)


class TestDatasetInvariants:
    def test_arrays_are_read_only(self, dataset):
        with pytest.raises(ValueError):
            dataset.y[0] = 99.0

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Dataset(np.array([1.0, 0.0]), np.array([np.nan, 1.0]), np.ones((2, 1)))

    def test_take_resamples_rows(self, dataset):
        sub = dataset.take(np.array([3, 1, 1]))
        assert sub.n == 3
        assert sub.y[1] == sub.y[2] == dataset.y[1]
