"""Tests for reading inputs and writing result files."""

import numpy as np
import pandas as pd
import pytest

from l2boost.exceptions import InputFormatError
from l2boost.models.classification import CvResult
from l2boost.models.dataset import SparseCoefficients
from l2boost.models.simulation import BenchmarkCell, ReplicationRecord
from l2boost.repositories import DataRepository, ResultRepository
from l2boost.repositories.result_repository import MISSING_CELL, format_cell

HEADER = {"version": "1.0.0", "rng": "PCG64", "seed": "3"}


def test_dataset_round_trip(tmp_path, rng):
    x = rng.standard_normal((6, 2))
    y = rng.standard_normal(6)
    pd.DataFrame({"a": x[:, 0], "y": y, "b": x[:, 1]}).to_csv(
        tmp_path / "data.csv", index=False, float_format="%.17g"
    )
    d = DataRepository(tmp_path).read_dataset("data.csv", "y")
    assert d.column_names == ("a", "b")
    np.testing.assert_array_equal(d.x, x)
    np.testing.assert_array_equal(d.y, y)


def test_missing_file(tmp_path):
    with pytest.raises(InputFormatError):
        DataRepository().read_dataset(tmp_path / "absent.csv", "y")


def test_empty_file(tmp_path):
    (tmp_path / "empty.csv").write_text("")
    with pytest.raises(InputFormatError):
        DataRepository(tmp_path).read_frame("empty.csv")


def test_missing_response_column(tmp_path):
    (tmp_path / "d.csv").write_text("a,b\n1,2\n3,4\n")
    with pytest.raises(InputFormatError) as exc_info:
        DataRepository(tmp_path).read_dataset("d.csv", "y")
    assert exc_info.value.details["columns"] == ["a", "b"]


def test_non_numeric_and_missing_values(tmp_path):
    (tmp_path / "text.csv").write_text("a,y\nx,1\ny,2\n")
    (tmp_path / "gap.csv").write_text("a,y\n1,\n2,3\n")
    repo = DataRepository(tmp_path)
    with pytest.raises(InputFormatError):
        repo.read_dataset("text.csv", "y")
    with pytest.raises(InputFormatError):
        repo.read_dataset("gap.csv", "y")


def test_non_numeric_predictor_columns_are_dropped(tmp_path, caplog):
    (tmp_path / "ids.csv").write_text("sample,x1,x2,y\na,1,2,3\nb,4,5,7\nc,2,0,1\n")
    with caplog.at_level("INFO", logger="l2boost.repositories.data_repository"):
        d = DataRepository(tmp_path).read_dataset("ids.csv", "y")
    assert d.column_names == ("x1", "x2")
    np.testing.assert_array_equal(d.x, [[1, 2], [4, 5], [2, 0]])
    np.testing.assert_array_equal(d.y, [3, 7, 1])
    assert "sample" in caplog.text


def test_non_numeric_response_is_rejected(tmp_path):
    (tmp_path / "d.csv").write_text("x1,y\n1,low\n2,high\n")
    with pytest.raises(InputFormatError) as exc_info:
        DataRepository(tmp_path).read_dataset("d.csv", "y")
    assert "not numeric" in exc_info.value.message


def test_expression_labels_must_be_binary(tmp_path):
    (tmp_path / "e.csv").write_text("g1,g2,label\n100,200,0\n300,400,2\n")
    with pytest.raises(InputFormatError):
        DataRepository(tmp_path).read_expression("e.csv")


def test_expression_values_must_be_non_negative(tmp_path):
    (tmp_path / "e.csv").write_text("g1,g2,label\n100,-5,0\n300,400,1\n")
    with pytest.raises(InputFormatError):
        DataRepository(tmp_path).read_expression("e.csv")


def test_read_expression(tmp_path):
    (tmp_path / "e.csv").write_text("# chip batch 2\ng1,g2,label\n100,200,0\n300,400,1\n")
    e = DataRepository(tmp_path).read_expression("e.csv")
    assert e.gene_names == ("g1", "g2")
    np.testing.assert_array_equal(e.labels, [0, 1])


def test_records_read_back_exactly(tmp_path):
    records = [
        ReplicationRecord("identity-p3", "l2boost", "m=12", 0, 1.0 / 3.0, 2),
        ReplicationRecord("identity-p3", "lasso*", "lambda=0.1", 1, np.pi * 1e-7, None),
    ]
    repo = ResultRepository(tmp_path, HEADER)
    repo.write_records(records)
    assert repo.read_records() == records
    assert repo.read_header("records.csv") == HEADER


def test_coefficient_file_layout(tmp_path):
    repo = ResultRepository(tmp_path, HEADER)
    repo.write_coefficients(SparseCoefficients(0.5, np.array([2.0, 0.0])), ["a", "b"], np.array([3.0, 1.0]))
    frame = repo.read_frame("coefficients.csv")
    assert frame["name"].tolist() == ["(intercept)", "a", "b"]
    assert frame["coefficient"].tolist() == [0.5, 2.0, 0.0]
    assert frame["scaled"].tolist() == [0.5, 6.0, 0.0]


def test_curve_round_trip(tmp_path):
    repo = ResultRepository(tmp_path, HEADER)
    values = np.array([0.1, 1.0 / 7.0, np.inf])
    repo.write_curve(values, first_m=0, name="c.dat")
    back = repo.read_curve("c.dat")
    np.testing.assert_array_equal(back[:, 0], [0, 1, 2])
    np.testing.assert_array_equal(back[:, 1], values)
    assert (tmp_path / "c.dat").read_text().splitlines()[0] == "# version: 1.0.0"


def test_cv_file(tmp_path):
    result = CvResult(0.25, np.array([0.0, 0.5]), np.array([3, 7]), np.array([0.5, 0.25]))
    repo = ResultRepository(tmp_path)
    repo.write_cv(result)
    frame = repo.read_frame("cv.csv")
    assert frame["rate"].mean() == result.rate
    assert frame["m_hat"].tolist() == [3, 7]
    assert result.mean_m_hat == 5.0
    assert result.best_curve_rate == 0.25


def test_summary_markdown(tmp_path):
    cells = [
        BenchmarkCell("identity-p3", "l2boost", "aicc", 1.6581, 0.1924, 50),
        BenchmarkCell("identity-p100", "l2boost", "aicc", 8.7921, 0.6401, 50),
        BenchmarkCell("identity-p3", "ols", "none", 1.103, 0.127, 50),
        BenchmarkCell("identity-p100", "ols", "none", float("nan"), float("nan"), 0, 50),
    ]
    repo = ResultRepository(tmp_path, {"seed": "0"})
    path = repo.write_summary(cells)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "<!-- seed: 0 -->"
    assert lines[1] == "| method | identity-p3 | identity-p100 |"
    assert lines[3] == "| l2boost | 1.658 (0.192) | 8.792 (0.640) |"
    assert lines[4] == f"| ols | 1.103 (0.127) | {MISSING_CELL} [50 failed] |"
    assert MISSING_CELL.encode("utf-8") in path.read_bytes()


def test_format_cell():
    assert format_cell(None) == MISSING_CELL
    assert format_cell(BenchmarkCell("s", "m", "t", 1.0, 0.0, 1, 2)) == "1.000 (0.000) [2 failed]"
