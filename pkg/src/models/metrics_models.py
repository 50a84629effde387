"""
Data models for the evaluation harness and run reports.
"""
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional

from models.data_models import ClassLabel

@dataclass(frozen=True)
class ConfusionCounts:
    """Confusion matrix with Minority as the positive class."""
    true_pos: int
    false_pos: int
    true_neg: int
    false_neg: int

    @property
    def total(self) -> int:
        return self.true_pos + self.false_pos + self.true_neg + self.false_neg

@dataclass(frozen=True)
class ScoredPrediction:
    """Minority score of one test row; higher means more Minority-like."""
    score: float
    true_label: ClassLabel
    predicted_label: ClassLabel

@dataclass
class RunReport:
    """Summary of one CLI run, written as JSON next to the outputs."""
    command: str
    seed: int
    config: Dict[str, Any]
    stage_counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    metrics: Dict[str, float] = field(default_factory=dict)
    n_balls: Optional[int] = None
    removals_by_phase: Dict[str, int] = field(default_factory=dict)
    wall_time_seconds: float = 0.0
    notes: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
