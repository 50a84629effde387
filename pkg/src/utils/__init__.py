"""Utils module."""
from .common import (
    safe_divide,
    task_rng,
    stage_rng,
    fingerprint
)
from .logging_utils import setup_logger, log_system_startup, log_system_error

__all__ = [
    'safe_divide',
    'task_rng',
    'stage_rng',
    'fingerprint',
    'setup_logger',
    'log_system_startup',
    'log_system_error'
]
