"""Trainer configuration, loadable from a single JSON file."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path


class ConfigurationError(ValueError):
    """Invalid trainer configuration."""


@dataclass
class TrainerConfig:
    input_size: int = 256
    learning_rate: float = 0.0002
    batch_size: int = 1
    epochs: int = 2
    weight_pixel: float = 1.0
    weight_feature: float = 0.5
    seed: int = 0
    # "auto" tries pretrained weights and falls back to a seeded random
    # extractor when they cannot be fetched; "random" skips the attempt.
    feature_weights: str = "auto"
    base_channels: int = 12
    growth: int = 8

    def __post_init__(self):
        if self.input_size < 8:
            raise ConfigurationError(f"input_size too small: {self.input_size}")
        if self.learning_rate <= 0:
            raise ConfigurationError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1 or self.epochs < 1:
            raise ConfigurationError("batch_size and epochs must be >= 1")
        if self.weight_pixel < 0 or self.weight_feature < 0:
            raise ConfigurationError("loss weights must be >= 0")
        if self.feature_weights not in ("auto", "pretrained", "random"):
            raise ConfigurationError(f"unknown feature_weights mode {self.feature_weights!r}")
        if self.base_channels < 1 or self.growth < 1:
            raise ConfigurationError("base_channels and growth must be >= 1")

    def to_json_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, path) -> "TrainerConfig":
        payload = json.loads(Path(path).read_text())
        unknown = set(payload) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**payload)
