"""Tests for class partitioning, stratified splitting, scaling and synthetic data."""
import numpy as np
import pytest

from conftest import make_dataset
from models.data_models import ClassLabel
from preprocessor import (
    SUITE_IR_RANGE, class_partition, fit_min_max, make_benchmark_suite, make_two_gaussian, stratified_split
)
from utils.errors import DatasetValidationError


def _indexed_dataset(n_majority: int, n_minority: int):
    """Row i holds the value i so rows can be traced through a split."""
    labels = [0] * n_majority + [1] * n_minority
    return make_dataset(np.arange(len(labels), dtype=float), labels)


class TestClassPartition:
    def test_mixed_order(self):
        d = make_dataset([[0.0], [1.0], [2.0]], [0, 1, 0])
        majority, minority = class_partition(d)
        np.testing.assert_array_equal(majority, [0, 2])
        np.testing.assert_array_equal(minority, [1])

    def test_all_minority(self):
        d = make_dataset([[0.0], [1.0]], [1, 1])
        majority, minority = class_partition(d)
        assert majority.shape == (0,)
        np.testing.assert_array_equal(minority, [0, 1])


class TestStratifiedSplit:
    """Per-class sizes, disjointness and failure cases."""

    def test_sizes_follow_fraction(self, rng: np.random.Generator):
        train, test = stratified_split(_indexed_dataset(100, 10), 0.7, rng)
        assert train.class_counts() == {"majority": 70, "minority": 7}
        assert test.class_counts() == {"majority": 30, "minority": 3}

    def test_splits_partition_the_rows(self, rng: np.random.Generator):
        d = _indexed_dataset(40, 9)
        train, test = stratified_split(d, 0.7, rng)
        combined = np.sort(np.concatenate([train.instances[:, 0], test.instances[:, 0]]))
        np.testing.assert_array_equal(combined, d.instances[:, 0])
        # rows keep their original order inside each split
        assert np.all(np.diff(train.instances[:, 0]) > 0)
        assert np.all(np.diff(test.instances[:, 0]) > 0)

    def test_labels_travel_with_rows(self, rng: np.random.Generator):
        d = _indexed_dataset(20, 6)
        train, _ = stratified_split(d, 0.5, rng)
        for value, label in zip(train.instances[:, 0], train.labels):
            assert label == d.labels[int(value)]

    def test_smallest_splittable(self, rng: np.random.Generator):
        train, test = stratified_split(_indexed_dataset(2, 2), 0.5, rng)
        assert train.class_counts() == {"majority": 1, "minority": 1}
        assert test.class_counts() == {"majority": 1, "minority": 1}

    def test_same_seed_same_split(self):
        d = _indexed_dataset(30, 8)
        a, _ = stratified_split(d, 0.7, np.random.default_rng(5))
        b, _ = stratified_split(d, 0.7, np.random.default_rng(5))
        np.testing.assert_array_equal(a.instances, b.instances)

    def test_single_minority_row(self, rng: np.random.Generator):
        with pytest.raises(DatasetValidationError):
            stratified_split(_indexed_dataset(10, 1), 0.7, rng)

    def test_fraction_leaves_empty_test(self, rng: np.random.Generator):
        with pytest.raises(DatasetValidationError):
            stratified_split(_indexed_dataset(10, 2), 0.9, rng)

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2])
    def test_fraction_out_of_range(self, rng: np.random.Generator, fraction: float):
        with pytest.raises(DatasetValidationError):
            stratified_split(_indexed_dataset(10, 4), fraction, rng)

    def test_sources_are_tagged(self, rng: np.random.Generator):
        d = make_dataset(np.arange(8.0), [0] * 5 + [1] * 3, source="toy")
        train, test = stratified_split(d, 0.5, rng)
        assert train.source == "toy#train"
        assert test.source == "toy#test"


class TestMinMaxScaling:
    def test_unit_range(self, imbalanced):
        scaled = fit_min_max(imbalanced).apply(imbalanced)
        np.testing.assert_allclose(scaled.instances.min(axis=0), 0.0)
        np.testing.assert_allclose(scaled.instances.max(axis=0), 1.0)
        np.testing.assert_array_equal(scaled.labels, imbalanced.labels)

    def test_constant_feature_maps_to_zero(self):
        d = make_dataset([[3.0, 1.0], [3.0, 2.0], [3.0, 5.0]], [0, 0, 1])
        scaled = fit_min_max(d).apply(d)
        np.testing.assert_array_equal(scaled.instances[:, 0], 0.0)

    def test_fitted_on_train_only(self):
        train = make_dataset([[0.0], [10.0]], [0, 1])
        test = make_dataset([[20.0], [5.0]], [0, 1])
        np.testing.assert_allclose(fit_min_max(train).apply(test).instances[:, 0], [2.0, 0.5])

    def test_feature_count_mismatch(self):
        scaling = fit_min_max(make_dataset([[0.0, 1.0], [1.0, 2.0]], [0, 1]))
        with pytest.raises(DatasetValidationError):
            scaling.apply(make_dataset([[0.0], [1.0]], [0, 1]))


class TestSynthetic:
    def test_two_gaussian_sizes(self, rng: np.random.Generator):
        d = make_two_gaussian(100, 10.0, 3, 1.5, rng)
        assert d.class_counts() == {"majority": 100, "minority": 10}
        assert d.feature_names == ("f1", "f2", "f3")
        assert d.class_names == ("negative", "positive")

    def test_minority_mean_is_shifted(self):
        d = make_two_gaussian(2000, 2.0, 2, 4.0, np.random.default_rng(1))
        shift = d.minority_instances.mean(axis=0) - d.majority_instances.mean(axis=0)
        np.testing.assert_allclose(shift, 4.0 / np.sqrt(2.0), atol=0.2)

    def test_minority_floor(self, rng: np.random.Generator):
        assert make_two_gaussian(10, 100.0, 2, 1.0, rng).minority_count == 2

    def test_rejects_bad_requests(self, rng: np.random.Generator):
        with pytest.raises(DatasetValidationError):
            make_two_gaussian(10, 0.5, 2, 1.0, rng)

    def test_benchmark_suite_bounds(self, rng: np.random.Generator):
        suite = make_benchmark_suite(20, rng)
        low, high = SUITE_IR_RANGE
        assert len(suite) == 20
        for d in suite:
            assert d.n_rows <= 500
            assert 2 <= d.n_features <= 10
            assert d.minority_count >= 4
            assert low - 1e-9 <= d.imbalance_ratio <= high + 1e-9
            assert set(np.unique(d.labels)) == {ClassLabel.MAJORITY, ClassLabel.MINORITY}

    def test_benchmark_suite_spans_the_range(self, rng: np.random.Generator):
        ratios = [d.imbalance_ratio for d in make_benchmark_suite(20, rng)]
        assert min(ratios) < 12.0
        assert max(ratios) > 60.0

    def test_benchmark_suite_needs_room_for_high_ratios(self, rng: np.random.Generator):
        with pytest.raises(DatasetValidationError):
            make_benchmark_suite(5, rng, max_rows=100)
