"""Configuration module."""
from .settings import Config
from .run_config import RunConfig, PipelineConfig, METHODS

__all__ = ['Config', 'RunConfig', 'PipelineConfig', 'METHODS']
