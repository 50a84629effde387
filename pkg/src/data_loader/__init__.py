"""Data loader module."""
from .keel_loader import parse_keel
from .csv_loader import parse_csv, write_csv
from .dataset_loader import DatasetLoader

__all__ = ['parse_keel', 'parse_csv', 'write_csv', 'DatasetLoader']
