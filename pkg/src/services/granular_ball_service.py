"""
Granular-ball generation by quality-threshold splitting.
"""
from collections import deque
from typing import Tuple
import numpy as np
from loguru import logger

from config.settings import Config
from models.ball_models import BallSet, GranularBall
from models.data_models import ClassLabel, Dataset
from utils.errors import GranularBallError

def ball_stats(member_indices: np.ndarray, dataset: Dataset) -> Tuple[np.ndarray, float, ClassLabel, float]:
    """
    Center, radius, label and quality of a set of rows.

    The center is the mean of the members and the radius their mean distance
    to it. The label is the more frequent class, Minority on a tie, and the
    quality is that class's share of the members.
    """
    member_indices = np.asarray(member_indices, dtype=np.int64)
    if member_indices.shape[0] == 0:
        raise GranularBallError("a granular ball needs at least one member")
    points = dataset.instances[member_indices]
    center = points.mean(axis=0)
    radius = float(np.linalg.norm(points - center, axis=1).mean())
    n_minority = int(np.count_nonzero(dataset.labels[member_indices] == ClassLabel.MINORITY))
    n_majority = member_indices.shape[0] - n_minority
    label = ClassLabel.MINORITY if n_minority >= n_majority else ClassLabel.MAJORITY
    quality = max(n_minority, n_majority) / member_indices.shape[0]
    return center, radius, label, quality

def make_ball(member_indices: np.ndarray, dataset: Dataset, creation_order: int) -> GranularBall:
    members = np.sort(np.asarray(member_indices, dtype=np.int64))
    members.setflags(write=False)
    center, radius, label, quality = ball_stats(members, dataset)
    return GranularBall(
        member_indices=members,
        center=center,
        radius=radius,
        label=label,
        quality=quality,
        creation_order=creation_order,
    )

def split_ball(
    ball: GranularBall,
    dataset: Dataset,
    rng: np.random.Generator,
    threshold: float = Config.GB_QUALITY_THRESHOLD,
    next_order: int = 0,
) -> Tuple[GranularBall, GranularBall]:
    """
    Split an impure ball around a randomly chosen member of another class.

    Members strictly closer to the chosen point x than to the ball center
    form the x-seeded child; the rest, ties included, form the center-seeded
    child. Returns (center_child, x_child) with creation orders next_order
    and next_order + 1.
    """
    if ball.quality >= threshold:
        raise GranularBallError(
            f"ball {ball.creation_order} has quality {ball.quality:.3f} >= threshold {threshold}"
        )
    members = ball.member_indices
    candidates = members[dataset.labels[members] != ball.label]
    x_row = int(candidates[int(rng.integers(candidates.shape[0]))])

    points = dataset.instances[members]
    to_x = np.linalg.norm(points - dataset.instances[x_row], axis=1)
    to_center = np.linalg.norm(points - ball.center, axis=1)
    x_side = to_x < to_center

    if x_side.all():
        x_side[int(np.argmin(to_center))] = False
    if not x_side.any():
        x_side[int(np.flatnonzero(members == x_row)[0])] = True

    return (
        make_ball(members[~x_side], dataset, next_order),
        make_ball(members[x_side], dataset, next_order + 1),
    )

def split_rng(entropy: int, lineage: Tuple[int, ...]) -> np.random.Generator:
    """Random stream for splitting the ball reached by lineage (0 = center child, 1 = x child)."""
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=lineage))

def generate_balls(
    dataset: Dataset,
    threshold: float = Config.GB_QUALITY_THRESHOLD,
    rng: np.random.Generator = None,
) -> BallSet:
    """
    Split one all-rows ball until every ball reaches the quality threshold.

    Balls are processed first-in first-out in creation order; the result is
    a partition of the dataset rows ordered by creation order. Each split
    draws from a stream keyed by the ball's lineage, so a lower threshold
    yields a coarsening of the ball set found at a higher one.
    """
    if not 0.5 < threshold <= 1.0:
        raise GranularBallError(f"quality threshold must be in (0.5, 1], got {threshold}")
    rng = rng if rng is not None else np.random.default_rng(Config.DEFAULT_SEED)
    entropy = int(rng.integers(2**63 - 1))

    pending = deque([(make_ball(np.arange(dataset.n_rows), dataset, 0), ())])
    finished = []
    next_order = 1
    n_splits = 0
    while pending:
        ball, lineage = pending.popleft()
        if ball.quality >= threshold:
            finished.append(ball)
            continue
        center_child, x_child = split_ball(ball, dataset, split_rng(entropy, lineage), threshold, next_order)
        pending.append((center_child, lineage + (0,)))
        pending.append((x_child, lineage + (1,)))
        next_order += 2
        n_splits += 1

    finished.sort(key=lambda b: b.creation_order)
    balls = BallSet(balls=tuple(finished), n_rows=dataset.n_rows, n_splits=n_splits)
    logger.debug(
        f"Generated {len(balls)} granular balls in {n_splits} splits "
        f"(threshold {threshold}, min quality {balls.min_quality():.3f})"
    )
    return balls
