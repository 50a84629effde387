"""Genetic programming core."""
from .program import Op, Function, MinRef, Constant, Program, evaluate
from .population import Population
from .operators import init_ramped_half_and_half, crossover_standard, crossover_transfer, mutate

__all__ = [
    'Op', 'Function', 'MinRef', 'Constant', 'Program', 'evaluate', 'Population',
    'init_ramped_half_and_half', 'crossover_standard', 'crossover_transfer', 'mutate'
]
