"""
Built-in kNN classifier and the AUC / G-Mean metrics used to score resamplers.
"""
import math
from typing import Dict, List, Sequence
import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import rankdata

from config.settings import Config
from models.data_models import ClassLabel, Dataset
from models.metrics_models import ConfusionCounts, ScoredPrediction
from utils.common import safe_divide
from utils.errors import EvaluationError

def knn_classify(train: Dataset, test: Dataset, k: int = Config.KNN_NEIGHBORS) -> List[ScoredPrediction]:
    """
    Score every test row by the Minority share of its k nearest training rows.

    Neighbour ties are broken by training row index; a row is predicted
    Minority only when its score exceeds 0.5.
    """
    if train.n_rows == 0:
        raise EvaluationError("training set is empty")
    if train.n_features != test.n_features:
        raise EvaluationError(f"train has {train.n_features} features, test has {test.n_features}")
    if not 1 <= k <= train.n_rows:
        raise EvaluationError(f"k={k} must be in [1, {train.n_rows}]")

    distances = cdist(test.instances, train.instances)
    nearest = np.argsort(distances, axis=1, kind="stable")[:, :k]
    scores = (train.labels[nearest] == ClassLabel.MINORITY).mean(axis=1)
    return [
        ScoredPrediction(
            score=float(score),
            true_label=ClassLabel(int(label)),
            predicted_label=ClassLabel.MINORITY if score > 0.5 else ClassLabel.MAJORITY,
        )
        for score, label in zip(scores, test.labels)
    ]

def confusion_counts(preds: Sequence[ScoredPrediction]) -> ConfusionCounts:
    tp = fp = tn = fn = 0
    for p in preds:
        if p.true_label == ClassLabel.MINORITY:
            if p.predicted_label == ClassLabel.MINORITY:
                tp += 1
            else:
                fn += 1
        elif p.predicted_label == ClassLabel.MINORITY:
            fp += 1
        else:
            tn += 1
    return ConfusionCounts(true_pos=tp, false_pos=fp, true_neg=tn, false_neg=fn)

def sensitivity(c: ConfusionCounts) -> float:
    return safe_divide(c.true_pos, c.true_pos + c.false_neg)

def specificity(c: ConfusionCounts) -> float:
    return safe_divide(c.true_neg, c.true_neg + c.false_pos)

def g_mean(c: ConfusionCounts) -> float:
    """sqrt(sensitivity * specificity); a rate with a zero denominator counts as 0."""
    return math.sqrt(sensitivity(c) * specificity(c))

def auc(preds: Sequence[ScoredPrediction]) -> float:
    """
    Rank-based (Mann-Whitney) AUC with Minority as the positive class.

    Tied scores contribute one half.

    Raises:
        EvaluationError: the predictions cover only one class
    """
    scores = np.array([p.score for p in preds], dtype=np.float64)
    positive = np.array([p.true_label == ClassLabel.MINORITY for p in preds], dtype=bool)
    n_pos = int(positive.sum())
    n_neg = positive.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise EvaluationError("AUC needs both classes in the test set")
    ranks = rankdata(scores)
    return float((ranks[positive].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))

def score_predictions(preds: Sequence[ScoredPrediction]) -> Dict[str, float]:
    """AUC, G-Mean and the two rates of one prediction set."""
    counts = confusion_counts(preds)
    return {
        "auc": auc(preds),
        "g_mean": g_mean(counts),
        "sensitivity": sensitivity(counts),
        "specificity": specificity(counts),
    }
