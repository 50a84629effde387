"""
Data models for granular balls and the removal plans built on them.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple
import numpy as np

from models.data_models import ClassLabel

@dataclass(frozen=True, eq=False)
class GranularBall:
    """
    A granule of dataset rows summarised by center, radius and quality.

    Attributes:
        member_indices: sorted dataset row indices covered by the ball
        center: mean of the members
        radius: mean Euclidean distance of the members to the center
        label: majority class among members (ties resolve to Minority)
        quality: max class count / member count
        creation_order: position in the order balls were created
    """
    member_indices: np.ndarray
    center: np.ndarray
    radius: float
    label: ClassLabel
    quality: float
    creation_order: int

    @property
    def size(self) -> int:
        return int(self.member_indices.shape[0])

    def to_record(self) -> Dict:
        return {
            "id": self.creation_order,
            "size": self.size,
            "label": self.label.name.lower(),
            "radius": float(self.radius),
            "quality": float(self.quality),
            "members": [int(i) for i in self.member_indices],
        }

@dataclass(frozen=True)
class BallSet:
    """Granular balls partitioning one dataset, ordered by creation_order."""
    balls: Tuple[GranularBall, ...]
    n_rows: int
    n_splits: int = 0

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self):
        return iter(self.balls)

    def is_partition(self) -> bool:
        """True when member sets are disjoint and cover every row."""
        if not self.balls:
            return self.n_rows == 0
        members = np.concatenate([b.member_indices for b in self.balls])
        return members.shape[0] == self.n_rows and np.array_equal(np.sort(members), np.arange(self.n_rows))

    def min_quality(self) -> float:
        return min(b.quality for b in self.balls)

    def to_records(self) -> List[Dict]:
        return [b.to_record() for b in self.balls]

@dataclass(frozen=True)
class RemovalPlan:
    """Rows deleted from one ball, with the neighbour evidence behind the count."""
    ball_id: int
    s: int
    phase: int
    neighbor_ids: Tuple[int, ...] = ()
    neighbor_labels: Tuple[str, ...] = ()
    shortfall: int = 0
    removed_indices: Tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict:
        return {
            "ball_id": self.ball_id,
            "s": self.s,
            "phase": self.phase,
            "neighbor_ids": list(self.neighbor_ids),
            "neighbor_labels": list(self.neighbor_labels),
            "shortfall": self.shortfall,
            "removed": list(self.removed_indices),
        }
