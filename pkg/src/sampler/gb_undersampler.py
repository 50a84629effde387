"""
Granular-ball undersampling: neighbour-driven noise removal followed by
class rebalancing.
"""
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple
import numpy as np
from loguru import logger
from scipy.spatial.distance import cdist

from config.settings import Config
from models.ball_models import BallSet, GranularBall, RemovalPlan
from models.data_models import ClassLabel, Dataset
from utils.errors import RebalancingError

PlannedRemoval = Tuple[GranularBall, List[GranularBall], int, int]

def ball_distance(b1: GranularBall, b2: GranularBall) -> float:
    """Center distance minus both radii; negative when the balls overlap."""
    return float(np.linalg.norm(b1.center - b2.center)) - b1.radius - b2.radius

def nearest_balls(target: GranularBall, balls: BallSet, k: int) -> Tuple[List[GranularBall], int]:
    """
    The k balls nearest to target by ball_distance, ties by creation order.

    Returns the neighbours and the shortfall k - len(neighbours), which is
    positive when fewer than k other balls exist.
    """
    others = [b for b in balls if b.creation_order != target.creation_order]
    others.sort(key=lambda b: (ball_distance(target, b), b.creation_order))
    neighbors = others[:k]
    return neighbors, k - len(neighbors)

def removal_count(target: GranularBall, neighbors: Sequence[GranularBall]) -> int:
    """
    Rows to delete from target: floor of the mean size of opposite-labelled
    neighbours (same-labelled neighbours count as 0), capped at the ball size.
    """
    if not neighbors:
        return 0
    opposite = sum(b.size for b in neighbors if b.label != target.label)
    return min(opposite // len(neighbors), target.size)

def plan_removals(balls: BallSet, k: int) -> List[PlannedRemoval]:
    """(ball, neighbours, s, shortfall) for every ball, from pre-removal statistics."""
    ordered = list(balls)
    if not ordered:
        return []
    centers = np.vstack([b.center for b in ordered])
    radii = np.array([b.radius for b in ordered])
    creation = np.array([b.creation_order for b in ordered])
    distances = cdist(centers, centers) - radii[:, None] - radii[None, :]
    np.fill_diagonal(distances, np.inf)
    n_found = min(k, len(ordered) - 1)

    plans = []
    for i, ball in enumerate(ordered):
        order = np.lexsort((creation, distances[i]))[:n_found]
        neighbors = [ordered[j] for j in order]
        plans.append((ball, neighbors, removal_count(ball, neighbors), k - n_found))
    return plans

def spare_last_rows(plans: List[PlannedRemoval]) -> List[PlannedRemoval]:
    """
    Keep noise removal from emptying every ball of one label.

    When each ball labelled L is planned for full removal (typically two
    well separated balls that are each other's only neighbour), the largest
    such ball is left untouched; ties go to the earliest created.
    """
    adjusted = list(plans)
    for label in ClassLabel:
        indexed = [(i, plan) for i, plan in enumerate(adjusted) if plan[0].label == label]
        if not indexed or any(plan[2] < plan[0].size for _, plan in indexed):
            continue
        i, (ball, neighbors, s, shortfall) = min(indexed, key=lambda p: (-p[1][0].size, p[1][0].creation_order))
        adjusted[i] = (ball, neighbors, 0, shortfall)
        logger.warning(
            f"Noise removal would empty every {label.name.lower()} ball; "
            f"sparing ball {ball.creation_order} ({ball.size} rows, planned s={s})"
        )
    return adjusted

@dataclass
class UndersampleResult:
    """Rebalanced dataset plus the per-ball removal report."""
    dataset: Dataset
    plans: List[RemovalPlan] = field(default_factory=list)

    def removed_by_phase(self) -> dict:
        totals = {"phase_1": 0, "phase_2": 0}
        for plan in self.plans:
            totals[f"phase_{plan.phase}"] += len(plan.removed_indices)
        return totals

class GranularBallUndersampler:
    """Removes rows ball by ball, then trims the larger class down to balance."""

    def __init__(self, k: int = Config.GB_NEIGHBORS):
        self.k = k

    def run(self, balls: BallSet, oversampled: Dataset, rng: np.random.Generator) -> UndersampleResult:
        """
        Phase 1 deletes s random members from every ball, with s computed on
        the untouched ball set; a label whose balls would all be emptied
        keeps its largest ball. Phase 2 repeatedly removes the smallest
        surviving ball of the larger class, taking only part of the last one
        so the classes end exactly equal.

        Raises:
            RebalancingError: a class is eliminated entirely
        """
        alive = np.ones(oversampled.n_rows, dtype=bool)
        report: List[RemovalPlan] = []

        for ball, neighbors, s, shortfall in spare_last_rows(plan_removals(balls, self.k)):
            removed = np.sort(rng.choice(ball.member_indices, size=s, replace=False)) if s > 0 else np.empty(0, int)
            alive[removed] = False
            report.append(RemovalPlan(
                ball_id=ball.creation_order,
                s=s,
                phase=1,
                neighbor_ids=tuple(b.creation_order for b in neighbors),
                neighbor_labels=tuple(b.label.name.lower() for b in neighbors),
                shortfall=shortfall,
                removed_indices=tuple(int(r) for r in removed),
            ))
            if shortfall:
                logger.debug(f"Ball {ball.creation_order}: only {len(neighbors)} of {self.k} neighbours available")

        self._check_survivors(oversampled, alive, "noise removal")
        report.extend(self._rebalance(balls, oversampled, alive, rng))

        survivors = np.flatnonzero(alive)
        result = oversampled.subset(survivors, source=f"{oversampled.source}+gbu")
        logger.debug(
            f"Undersampling kept {survivors.shape[0]} of {oversampled.n_rows} rows: {result.class_counts()}"
        )
        return UndersampleResult(dataset=result, plans=report)

    @staticmethod
    def _check_survivors(d: Dataset, alive: np.ndarray, stage: str) -> None:
        labels = d.labels[alive]
        for role in ClassLabel:
            if not np.any(labels == role):
                raise RebalancingError(f"{stage} eliminated every {role.name.lower()} row")

    def _rebalance(self, balls: BallSet, d: Dataset, alive: np.ndarray,
                   rng: np.random.Generator) -> List[RemovalPlan]:
        plans = []
        while True:
            n_min = int(np.count_nonzero(alive & (d.labels == ClassLabel.MINORITY)))
            n_maj = int(np.count_nonzero(alive & (d.labels == ClassLabel.MAJORITY)))
            difference = abs(n_maj - n_min)
            if difference == 0:
                return plans
            larger = ClassLabel.MAJORITY if n_maj > n_min else ClassLabel.MINORITY

            candidates = []
            for ball in balls:
                if ball.label != larger:
                    continue
                survivors = ball.member_indices[alive[ball.member_indices]]
                removable = survivors[d.labels[survivors] == larger]
                if removable.shape[0]:
                    candidates.append((survivors.shape[0], ball.creation_order, removable))
            if not candidates:
                raise RebalancingError(
                    f"{difference} {larger.name.lower()} rows remain but no {larger.name.lower()} ball survives"
                )
            _, ball_id, removable = min(candidates, key=lambda c: (c[0], c[1]))

            if removable.shape[0] > difference:
                removable = np.sort(rng.choice(removable, size=difference, replace=False))
                logger.info(f"Partial removal of {difference} rows from ball {ball_id} to reach exact balance")
            alive[removable] = False
            plans.append(RemovalPlan(
                ball_id=ball_id, s=int(removable.shape[0]), phase=2,
                removed_indices=tuple(int(r) for r in removable),
            ))

def undersample(balls: BallSet, oversampled: Dataset, k: int, rng: np.random.Generator) -> Dataset:
    """Balanced subset of the oversampled rows, in original row order."""
    return GranularBallUndersampler(k).run(balls, oversampled, rng).dataset
