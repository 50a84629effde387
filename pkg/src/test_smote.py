"""Tests for the SMOTE baseline."""
import numpy as np
import pytest
from scipy.spatial.distance import cdist

from conftest import make_dataset
from models.data_models import Dataset
from services.smote_service import smote, smote_samples
from utils.errors import SamplingError


class TestSmoteSamples:
    """Interpolation between a minority row and one of its neighbours."""

    def test_points_lie_on_the_segment(self, rng: np.random.Generator):
        minority = rng.normal(size=(20, 3))
        synthetic, base, partner = smote_samples(minority, 5, 10_000, rng)
        low = np.minimum(minority[base], minority[partner])
        high = np.maximum(minority[base], minority[partner])
        assert np.all((synthetic >= low) & (synthetic <= high))
        # collinear with the pair: the same interpolation weight on every feature
        direction = minority[partner] - minority[base]
        weights = (synthetic - minority[base])[:, 0] / direction[:, 0]
        np.testing.assert_allclose(
            minority[base] + weights[:, None] * direction, synthetic, rtol=1e-9, atol=1e-9
        )

    def test_partner_is_a_k_nearest_neighbour(self, rng: np.random.Generator):
        minority = rng.normal(size=(15, 2))
        _, base, partner = smote_samples(minority, 3, 500, rng)
        distances = cdist(minority, minority)
        np.fill_diagonal(distances, np.inf)
        nearest = np.argsort(distances, axis=1, kind="stable")[:, :3]
        assert all(p in nearest[b] for b, p in zip(base, partner))
        assert np.all(base != partner)

    def test_two_points_give_their_segment(self, rng: np.random.Generator):
        minority = np.array([[0.0, 0.0], [2.0, 4.0]])
        synthetic, _, _ = smote_samples(minority, 1, 200, rng)
        np.testing.assert_allclose(synthetic[:, 1], 2.0 * synthetic[:, 0])


class TestSmote:
    def test_balances_by_default(self, imbalanced: Dataset, rng: np.random.Generator):
        out = smote(imbalanced, 3, rng=rng)
        assert out.majority_count == out.minority_count
        np.testing.assert_array_equal(out.instances[:imbalanced.n_rows], imbalanced.instances)

    def test_explicit_count(self, imbalanced: Dataset, rng: np.random.Generator):
        assert smote(imbalanced, 2, n_to_generate=7, rng=rng).n_rows == imbalanced.n_rows + 7

    def test_balanced_input_unchanged(self, rng: np.random.Generator):
        d = make_dataset([[0.0], [1.0], [2.0], [3.0]], [0, 1, 0, 1])
        assert smote(d, 1, rng=rng) is d

    def test_deterministic(self, imbalanced: Dataset):
        a = smote(imbalanced, 3, rng=np.random.default_rng(4))
        b = smote(imbalanced, 3, rng=np.random.default_rng(4))
        assert a == b

    def test_one_minority_row(self, rng: np.random.Generator):
        d = make_dataset([[0.0], [1.0], [2.0]], [0, 0, 1])
        with pytest.raises(SamplingError):
            smote(d, 1, rng=rng)

    @pytest.mark.parametrize("k", [0, 5, 9])
    def test_k_out_of_range(self, imbalanced: Dataset, rng: np.random.Generator, k: int):
        with pytest.raises(SamplingError):
            smote(imbalanced, k, rng=rng)
