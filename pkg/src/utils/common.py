"""
Common utility functions used across the ResamplePilot toolkit.
"""
import hashlib
import numpy as np

def safe_divide(numerator: float, denominator: float, default: float = 0.0) -> float:
    """Safely divide two numbers, returning default if denominator is zero."""
    return numerator / denominator if denominator != 0 else default

def task_rng(master_seed: int, stream_id: int) -> np.random.Generator:
    """
    Independent random stream for one task.

    The stream depends only on (master_seed, stream_id), so results do not
    depend on how tasks are scheduled across workers.
    """
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(stream_id)]))

def stage_rng(master_seed: int, stage: str) -> np.random.Generator:
    """Random stream for a named single-threaded pipeline stage."""
    digest = hashlib.sha256(stage.encode("utf-8")).digest()
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int.from_bytes(digest[:4], "little")]))

def fingerprint(array: np.ndarray) -> str:
    """Short content hash of an array, used for leakage checks."""
    return hashlib.md5(np.ascontiguousarray(array).tobytes()).hexdigest()[:12]
