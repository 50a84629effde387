"""Resampling pipeline module."""
from .multitask_oversampler import MultiTaskOversampler, EvolutionResult, evolve_all
from .gb_undersampler import GranularBallUndersampler, UndersampleResult, ball_distance, nearest_balls, removal_count, undersample
from .hybrid_sampler import HybridSampler, ResampleOutcome

__all__ = [
    'MultiTaskOversampler', 'EvolutionResult', 'evolve_all',
    'GranularBallUndersampler', 'UndersampleResult', 'ball_distance', 'nearest_balls', 'removal_count', 'undersample',
    'HybridSampler', 'ResampleOutcome'
]
