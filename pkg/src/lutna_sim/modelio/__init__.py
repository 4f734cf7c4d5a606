"""
Persistence for models, datasets and histograms.
"""

from .datasets import GENERATOR_REGISTRY, Dataset, DatasetSource, load_dataset
from .histograms import load_histogram, save_histogram
from .model_store import FORMAT_VERSION, load_model, save_model

__all__ = [
    'GENERATOR_REGISTRY',
    'Dataset',
    'DatasetSource',
    'load_dataset',
    'load_histogram',
    'save_histogram',
    'FORMAT_VERSION',
    'load_model',
    'save_model',
]
