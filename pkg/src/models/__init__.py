"""Models module."""
from .data_models import ClassLabel, Dataset
from .evolution_models import FEASIBILITY_THRESHOLD, Triangle, FitnessValue, Task, TaskGroup, GenerationRecord
from .ball_models import GranularBall, BallSet, RemovalPlan
from .metrics_models import ConfusionCounts, ScoredPrediction, RunReport

__all__ = [
    'ClassLabel', 'Dataset',
    'FEASIBILITY_THRESHOLD', 'Triangle', 'FitnessValue', 'Task', 'TaskGroup', 'GenerationRecord',
    'GranularBall', 'BallSet', 'RemovalPlan',
    'ConfusionCounts', 'ScoredPrediction', 'RunReport'
]
