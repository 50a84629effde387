"""Dataset preprocessor module."""
from .dataset_processor import class_partition, stratified_split, fit_min_max, MinMaxScaling
from .synthetic import SUITE_IR_RANGE, make_two_gaussian, make_benchmark_suite

__all__ = [
    'class_partition', 'stratified_split', 'fit_min_max', 'MinMaxScaling',
    'SUITE_IR_RANGE', 'make_two_gaussian', 'make_benchmark_suite'
]
