"""Quality metrics and the CSV reporting row."""

import csv

import numpy as np
import pytest

from tubal import metrics


def rand(shape, seed=0):
    return np.random.default_rng(seed).standard_normal(shape)


class TestPsnr:
    def test_identical_is_infinite(self):
        x = rand((4, 4, 3))
        assert metrics.psnr(x, x) == np.inf

    def test_constant_offset_reference_value(self):
        x = rand((10, 10, 5), seed=1)
        assert metrics.psnr(x + 0.1, x, peak=1.0) == pytest.approx(20.0)

    def test_peak_scaling(self):
        x = rand((6, 6, 4), seed=2)
        y = x + 0.05
        assert metrics.psnr(y, x, peak=2.0) == pytest.approx(
            metrics.psnr(y, x, peak=1.0) + 20.0 * np.log10(2.0)
        )

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            metrics.psnr(np.zeros((2, 2, 2)), np.zeros((2, 2, 3)))

    def test_invalid_peak(self):
        with pytest.raises(ValueError):
            metrics.psnr(np.zeros((2, 2, 2)), np.zeros((2, 2, 2)), peak=0.0)


class TestRse:
    def test_identical_is_zero(self):
        x = rand((5, 4, 3), seed=3)
        assert metrics.rse(x, x) == 0.0

    def test_formula(self):
        x = rand((5, 4, 3), seed=4)
        e = rand((5, 4, 3), seed=5)
        assert metrics.rse(x + e, x) == pytest.approx(
            np.linalg.norm(e) / np.linalg.norm(x)
        )

    def test_zero_reference_rejected(self):
        with pytest.raises(ValueError):
            metrics.rse(np.ones((2, 2, 2)), np.zeros((2, 2, 2)))


class TestFMeasure:
    def test_perfect_match(self):
        m = rand((6, 6, 2), seed=6) > 0
        assert metrics.f_measure(m, m) == 1.0

    def test_all_wrong(self):
        m = np.zeros((4, 4, 2), bool)
        m[0, 0, 0] = True
        assert metrics.f_measure(~m, m) == 0.0

    def test_half_precision(self):
        ref = np.zeros((2, 2, 1), bool)
        ref[0, 0, 0] = True
        hat = np.ones((2, 2, 1), bool)
        p, r = 0.25, 1.0
        assert metrics.f_measure(hat, ref) == pytest.approx(2 * p * r / (p + r))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            metrics.f_measure(np.zeros((2, 2, 2), bool), np.zeros((2, 2, 3), bool))


class TestClusterAccuracy:
    def test_exact_match(self):
        labels = np.array([1, 1, 2, 2, 3, 3])
        assert metrics.cluster_accuracy(labels, labels) == 1.0

    def test_relabeling_is_perfect(self):
        ref = np.array([1, 1, 2, 2, 3, 3])
        hat = np.array([3, 3, 1, 1, 2, 2])
        assert metrics.cluster_accuracy(hat, ref) == 1.0

    def test_one_mistake(self):
        ref = np.array([1, 1, 1, 2, 2, 2])
        hat = np.array([1, 1, 2, 2, 2, 2])
        assert metrics.cluster_accuracy(hat, ref) == pytest.approx(5.0 / 6.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            metrics.cluster_accuracy(np.array([1, 2]), np.array([1, 2, 3]))

    def test_too_many_clusters_rejected(self):
        labels = np.arange(1, 9)
        with pytest.raises(ValueError):
            metrics.cluster_accuracy(labels, labels)


class TestMetricsCsv:
    def test_header_written_once_and_columns_stable(self, tmp_path):
        path = str(tmp_path / "m.csv")
        metrics.append_metrics_row(
            path, metrics.MetricsRow("exp1", "lrtc", psnr_db=30.0, rse=1e-4, iterations=10)
        )
        metrics.append_metrics_row(
            path, metrics.MetricsRow("exp2", "trpca", f_measure=0.99, converged=True)
        )
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == metrics.CSV_COLUMNS
        assert len(rows) == 3
        assert rows[1][0] == "exp1"
        assert rows[2][1] == "trpca"

    def test_infinite_psnr_sentinel(self, tmp_path):
        path = str(tmp_path / "m.csv")
        metrics.append_metrics_row(
            path, metrics.MetricsRow("exp", "wtnn", psnr_db=np.inf)
        )
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        idx = metrics.CSV_COLUMNS.index("psnr_db")
        assert rows[1][idx] == "inf"

    def test_absent_metrics_are_empty_cells(self, tmp_path):
        path = str(tmp_path / "m.csv")
        metrics.append_metrics_row(path, metrics.MetricsRow("exp", "mod"))
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[1][metrics.CSV_COLUMNS.index("rse")] == ""
        assert rows[1][metrics.CSV_COLUMNS.index("cluster_accuracy")] == ""

    def test_converged_serialized_as_bool_word(self, tmp_path):
        path = str(tmp_path / "m.csv")
        metrics.append_metrics_row(
            path, metrics.MetricsRow("exp", "lrtc", converged=False)
        )
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[1][metrics.CSV_COLUMNS.index("converged")] == "false"
