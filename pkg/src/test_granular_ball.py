"""Tests for granular-ball statistics, splitting and generation."""
import numpy as np
import pytest

from conftest import make_dataset
from models.data_models import ClassLabel
from services.granular_ball_service import ball_stats, generate_balls, make_ball, split_ball
from utils.errors import GranularBallError


def _xor_dataset():
    points = [
        [0.0, 0.0], [0.1, 0.0], [1.0, 1.0], [1.1, 1.0],
        [0.0, 1.0], [0.1, 1.0], [1.0, 0.0], [1.1, 0.0],
    ]
    return make_dataset(points, [0, 0, 0, 0, 1, 1, 1, 1])


class TestBallStats:
    """Center, radius, label and quality of a member set."""

    def test_pure_pair(self):
        d = make_dataset([[0.0], [2.0]], [0, 0])
        center, radius, label, quality = ball_stats(np.array([0, 1]), d)
        np.testing.assert_array_equal(center, [1.0])
        assert radius == 1.0
        assert label is ClassLabel.MAJORITY
        assert quality == 1.0

    def test_mixed_quality(self):
        d = make_dataset(np.arange(5.0), [0, 0, 0, 0, 1])
        _, _, label, quality = ball_stats(np.arange(5), d)
        assert label is ClassLabel.MAJORITY
        assert quality == pytest.approx(0.8)

    def test_tie_goes_to_minority(self):
        d = make_dataset([[0.0], [1.0]], [0, 1])
        _, _, label, quality = ball_stats(np.array([0, 1]), d)
        assert label is ClassLabel.MINORITY
        assert quality == 0.5

    def test_singleton(self):
        d = make_dataset([[3.0, 4.0]], [1])
        center, radius, _, quality = ball_stats(np.array([0]), d)
        np.testing.assert_array_equal(center, [3.0, 4.0])
        assert radius == 0.0
        assert quality == 1.0

    def test_empty(self):
        with pytest.raises(GranularBallError):
            ball_stats(np.array([], dtype=int), make_dataset([[0.0]], [0]))

    def test_make_ball_sorts_members(self):
        d = make_dataset(np.arange(4.0), [0, 1, 0, 1])
        ball = make_ball(np.array([3, 0, 2]), d, 7)
        np.testing.assert_array_equal(ball.member_indices, [0, 2, 3])
        assert ball.creation_order == 7
        assert ball.size == 3


class TestSplitBall:
    def test_two_opposite_points(self, rng: np.random.Generator):
        d = make_dataset([[0.0], [1.0]], [0, 1])
        ball = make_ball(np.array([0, 1]), d, 0)
        center_child, x_child = split_ball(ball, d, rng, next_order=1)
        assert {center_child.size, x_child.size} == {1, 1}
        assert (center_child.creation_order, x_child.creation_order) == (1, 2)
        # the chosen point is from the non-label class
        np.testing.assert_array_equal(x_child.member_indices, [0])

    def test_children_partition_parent(self, rng: np.random.Generator):
        d = make_dataset(rng.normal(size=(40, 2)), [0] * 25 + [1] * 15)
        ball = make_ball(np.arange(40), d, 0)
        a, b = split_ball(ball, d, rng)
        assert a.size > 0 and b.size > 0
        members = np.sort(np.concatenate([a.member_indices, b.member_indices]))
        np.testing.assert_array_equal(members, np.arange(40))

    def test_pure_ball_is_not_split(self, rng: np.random.Generator):
        d = make_dataset([[0.0], [1.0]], [1, 1])
        with pytest.raises(GranularBallError):
            split_ball(make_ball(np.array([0, 1]), d, 0), d, rng)

    def test_duplicate_points_of_different_classes(self, rng: np.random.Generator):
        d = make_dataset([[1.0, 1.0], [1.0, 1.0]], [0, 1])
        a, b = split_ball(make_ball(np.array([0, 1]), d, 0), d, rng)
        assert a.size == 1 and b.size == 1


class TestGenerateBalls:
    """Partition, purity and determinism of the generated ball set."""

    def test_single_class_is_one_ball(self, rng: np.random.Generator):
        d = make_dataset(rng.normal(size=(10, 2)), [0] * 10)
        balls = generate_balls(d, 1.0, rng)
        assert len(balls) == 1
        assert balls.n_splits == 0

    def test_xor_layout(self, rng: np.random.Generator):
        balls = generate_balls(_xor_dataset(), 1.0, rng)
        assert balls.is_partition()
        assert len(balls) >= 2
        assert all(b.quality == 1.0 for b in balls)
        assert {b.label for b in balls} == {ClassLabel.MAJORITY, ClassLabel.MINORITY}

    def test_fuzzed_partition_and_purity(self, rng: np.random.Generator):
        for _ in range(200):
            n = int(rng.integers(2, 301))
            d = make_dataset(rng.normal(size=(n, int(rng.integers(1, 5)))), rng.integers(0, 2, size=n))
            balls = generate_balls(d, 1.0, rng)
            assert balls.is_partition()
            assert all(b.quality == 1.0 for b in balls)
            assert balls.n_splits <= n - 1
            assert [b.creation_order for b in balls] == sorted(b.creation_order for b in balls)

    def test_lower_threshold(self, rng: np.random.Generator):
        d = make_dataset(rng.normal(size=(150, 2)), rng.integers(0, 2, size=150))
        strict = generate_balls(d, 1.0, np.random.default_rng(4))
        loose = generate_balls(d, 0.7, np.random.default_rng(4))
        assert loose.is_partition()
        assert loose.min_quality() >= 0.7
        assert strict.min_quality() == 1.0

    def test_threshold_sweep_coarsens(self, rng: np.random.Generator):
        """Lowering the threshold merges balls back along their split lineage."""
        thresholds = [0.6, 0.7, 0.8, 0.9, 1.0]
        for case in range(200):
            n = int(rng.integers(2, 200))
            d = make_dataset(rng.normal(size=(n, int(rng.integers(1, 4)))), rng.integers(0, 2, size=n))
            sweep = [generate_balls(d, t, np.random.default_rng(case)) for t in thresholds]
            counts = [len(balls) for balls in sweep]
            assert counts == sorted(counts), f"dataset {case}: {counts}"
            for loose, strict in zip(sweep, sweep[1:]):
                owner = np.empty(n, dtype=int)
                for ball in loose:
                    owner[ball.member_indices] = ball.creation_order
                assert all(len(set(owner[b.member_indices])) == 1 for b in strict)

    def test_deterministic(self, rng: np.random.Generator):
        d = make_dataset(rng.normal(size=(80, 3)), rng.integers(0, 2, size=80))
        a = generate_balls(d, 1.0, np.random.default_rng(9)).to_records()
        b = generate_balls(d, 1.0, np.random.default_rng(9)).to_records()
        assert a == b

    @pytest.mark.parametrize("threshold", [0.5, 0.3, 1.2])
    def test_threshold_range(self, threshold: float):
        with pytest.raises(GranularBallError):
            generate_balls(make_dataset([[0.0], [1.0]], [0, 1]), threshold)
