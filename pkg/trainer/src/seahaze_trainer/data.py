"""Reader for the sample-directory dataset format.

Each sample directory holds clean.png, degraded.png (8-bit RGB),
trans.png (16-bit RGB transmission) and meta.json with the attenuation
and background vectors. Tensors come out as float32 CHW in [0, 1].
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch

from seahaze import fileio
from seahaze.errors import DataError

SAMPLE_FILES = ("clean.png", "degraded.png", "trans.png", "meta.json")


def _to_chw(img: np.ndarray) -> torch.Tensor:
    return torch.from_numpy(np.ascontiguousarray(img.transpose(2, 0, 1))).float()


class SampleFolderDataset:
    """Samples from a dataset directory written by the synthesis CLI."""

    def __init__(self, root):
        self.root = Path(root)
        if not self.root.is_dir():
            raise FileNotFoundError(f"dataset directory not found: {root}")
        manifest_path = self.root / "manifest.json"
        if manifest_path.exists():
            manifest = fileio.read_json(manifest_path)
            self.dirs = [self.root / entry["dir"] for entry in manifest["samples"]]
        else:
            self.dirs = sorted(p for p in self.root.glob("sample_*") if p.is_dir())
        if not self.dirs:
            raise DataError(f"no sample directories under {root}")

    def __len__(self) -> int:
        return len(self.dirs)

    def __getitem__(self, index: int) -> dict:
        directory = self.dirs[index]
        missing = [name for name in SAMPLE_FILES if not (directory / name).exists()]
        if missing:
            raise DataError(f"sample directory {directory} lacks {missing}")
        meta = fileio.read_json(directory / "meta.json")
        for key in ("attenuation", "background"):
            if key not in meta or len(meta[key]) != 3:
                raise DataError(f"sample directory {directory} has malformed {key}")
        cb = torch.tensor(
            [*meta["attenuation"], *meta["background"]], dtype=torch.float32
        )
        return {
            "name": directory.name,
            "clean": _to_chw(fileio.read_image(directory / "clean.png")),
            "degraded": _to_chw(fileio.read_image(directory / "degraded.png")),
            "trans": _to_chw(fileio.read_transmission(directory / "trans.png")),
            "cb": cb,
        }

    def batch(self, index: int) -> dict:
        """One sample with a leading batch dimension."""
        item = self[index]
        return {
            key: value.unsqueeze(0) if isinstance(value, torch.Tensor) else value
            for key, value in item.items()
        }
