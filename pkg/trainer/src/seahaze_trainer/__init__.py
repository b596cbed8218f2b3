"""Toy-scale adversarial trainer for the seahaze restoration model."""

from .config import ConfigurationError, TrainerConfig
from .data import SampleFolderDataset
from .export import export_restorations
from .networks import (
    EdgeNet,
    Generator,
    GeneratorOutputs,
    ParamNet,
    PatchDiscriminator,
    TransmissionNet,
)
from .physics import restore_images
from .training import TrainState, build_state, load_generator, train, training_step

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "EdgeNet",
    "Generator",
    "GeneratorOutputs",
    "ParamNet",
    "PatchDiscriminator",
    "SampleFolderDataset",
    "TrainState",
    "TrainerConfig",
    "TransmissionNet",
    "build_state",
    "export_restorations",
    "load_generator",
    "restore_images",
    "train",
    "training_step",
]
