import json

import numpy as np
import pytest

from rspca.matio import infer_format, load_matrix, save_matrix, write_json


def test_infer_format():
    assert infer_format("a/b.mtx") == "matrix-market"
    assert infer_format("a/b.MM") == "matrix-market"
    assert infer_format("data.csv") == "csv"
    with pytest.raises(ValueError):
        infer_format("data.parquet")


def test_csv_round_trip_full_precision(tmp_path):
    X = np.random.default_rng(50).normal(size=(4, 3)) * np.pi
    path = tmp_path / "x.csv"
    save_matrix(path, X)
    np.testing.assert_array_equal(load_matrix(path), X)


def test_matrix_market_round_trip_full_precision(tmp_path):
    X = np.random.default_rng(51).normal(size=(5, 2))
    path = tmp_path / "x.mtx"
    save_matrix(path, X)
    np.testing.assert_array_equal(load_matrix(path), X)


def test_explicit_format_overrides_extension(tmp_path):
    X = np.array([[1.5, 2.5]])
    path = tmp_path / "x.dat"
    save_matrix(path, X, format="csv")
    np.testing.assert_array_equal(load_matrix(path, format="csv"), X)


def test_single_row_csv_stays_two_dimensional(tmp_path):
    path = tmp_path / "row.csv"
    path.write_text("1.0,2.0,3.0\n")
    X = load_matrix(path)
    assert X.shape == (1, 3)


def test_symmetric_coordinate_entries_are_mirrored(tmp_path):
    path = tmp_path / "sym.mtx"
    path.write_text(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "2 2 2\n"
        "1 1 2.0\n"
        "2 1 0.5\n"
    )
    X = load_matrix(path)
    np.testing.assert_array_equal(X, [[2.0, 0.5], [0.5, 0.0]])


def test_array_format_is_column_major(tmp_path):
    path = tmp_path / "arr.mtx"
    path.write_text(
        "%%MatrixMarket matrix array real general\n"
        "2 2\n1\n2\n3\n4\n"
    )
    np.testing.assert_array_equal(load_matrix(path), [[1.0, 3.0], [2.0, 4.0]])


def test_load_errors_are_value_errors(tmp_path):
    with pytest.raises(ValueError):
        load_matrix(tmp_path / "missing.csv")
    bad = tmp_path / "bad.mtx"
    bad.write_text("not a matrix market header\n")
    with pytest.raises(ValueError):
        load_matrix(bad)
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError):
        load_matrix(empty)
    nan = tmp_path / "nan.csv"
    nan.write_text("1.0,nan\n2.0,3.0\n")
    with pytest.raises(ValueError):
        load_matrix(nan)


def test_load_error_message_names_the_file(tmp_path):
    missing = tmp_path / "gone.csv"
    with pytest.raises(ValueError, match="gone.csv"):
        load_matrix(missing)


def test_write_json_deterministic_and_coerces_numpy(tmp_path):
    payload = {
        "b": np.float64(1.5),
        "a": np.int64(3),
        "arr": np.array([1.0, 2.0]),
        "flag": np.bool_(True),
    }
    p1, p2 = tmp_path / "one.json", tmp_path / "two.json"
    write_json(p1, payload)
    write_json(p2, payload)
    assert p1.read_bytes() == p2.read_bytes()
    text = p1.read_text()
    assert text.endswith("\n")
    loaded = json.loads(text)
    assert loaded == {"b": 1.5, "a": 3, "arr": [1.0, 2.0], "flag": True}
    # insertion order preserved
    assert list(loaded) == ["b", "a", "arr", "flag"]
