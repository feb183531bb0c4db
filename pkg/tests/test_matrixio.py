import numpy as np
import pytest

from subspace_perturb.matrixio import read_matrix, write_matrix


def test_round_trip(tmp_path):
    path = tmp_path / "m.csv"
    M = np.array([[1.5, -2.25], [0.125, 3.0], [1e-9, -4.5e7]])
    write_matrix(path, M)
    np.testing.assert_array_equal(read_matrix(path), M)


def test_full_precision(tmp_path):
    path = tmp_path / "m.csv"
    M = np.array([[np.pi, np.e]])
    write_matrix(path, M)
    np.testing.assert_array_equal(read_matrix(path), M)


def test_rejects_ragged(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n4,5\n")
    with pytest.raises(ValueError, match="ragged"):
        read_matrix(path)


def test_rejects_non_numeric(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2\nx,4\n")
    with pytest.raises(ValueError, match="non-numeric"):
        read_matrix(path)


def test_rejects_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ValueError, match="empty"):
        read_matrix(path)


def test_rejects_nan(tmp_path):
    path = tmp_path / "nan.csv"
    path.write_text("1,nan\n2,3\n")
    with pytest.raises(ValueError, match="non-finite"):
        read_matrix(path)
