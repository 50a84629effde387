"""
Data models for the multi-task GP oversampler.
"""
from dataclasses import dataclass, asdict
from typing import Optional, Tuple
import math
import numpy as np

# D above this value is equivalent to the synthetic point lying nearer Min_t than Maj_t
FEASIBILITY_THRESHOLD = (math.e - math.exp(0.5)) / (math.e - 1.0)

@dataclass(frozen=True)
class Triangle:
    """Sides of the triangle formed by a synthetic instance and its two targets."""
    a: float  # synthetic <-> Min_t
    b: float  # synthetic <-> Maj_t
    c: float  # Min_t <-> Maj_t

@dataclass(frozen=True)
class FitnessValue:
    """Fitness = [D, θ] with the feasibility predicate D > FEASIBILITY_THRESHOLD."""
    d_score: float
    theta_degrees: float
    feasible: bool

    @classmethod
    def worst(cls) -> "FitnessValue":
        """Fitness assigned to programs whose phenotype is undefined."""
        return cls(d_score=0.0, theta_degrees=0.0, feasible=False)

@dataclass(frozen=True, eq=False)
class Task:
    """
    One oversampling job: evolve a synthetic instance for a (Maj_t, Min_t) pair.

    Attributes:
        id: task index in [0, n)
        maj_target: Maj_t feature vector
        min_target: Min_t feature vector
        maj_target_index: row of Maj_t in the training set
        min_target_key: row of Min_t in the training set (group key)
        auxiliary_id: task whose elites feed transfer crossover
    """
    id: int
    maj_target: np.ndarray
    min_target: np.ndarray
    maj_target_index: int
    min_target_key: int
    auxiliary_id: Optional[int] = None

@dataclass(frozen=True)
class TaskGroup:
    """Tasks sharing one Min_t."""
    min_target_key: int
    member_task_ids: Tuple[int, ...]

@dataclass(frozen=True)
class GenerationRecord:
    """Best-of-population state of one task after one generation."""
    task_id: int
    generation: int
    best_d: float
    best_theta: float
    feasible: bool
    auxiliary_id: Optional[int]
    arm: str = ""

    def to_dict(self) -> dict:
        return asdict(self)
